// Copyright 2026 The hrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrcsim/tableau.hpp"

#include <stdexcept>

namespace hrcsim {

StabilizerTableau::StabilizerTableau(int n_qubits) {
  if (n_qubits <= 0) {
    throw std::invalid_argument("StabilizerTableau: n_qubits must be positive");
  }
  n_ = n_qubits;
  generators_ = BitMatrix(n_, 2 * n_);
  for (int g = 0; g < n_; ++g) {
    generators_.set(g, n_ + g, true);  // Z_g
  }
}

StabilizerTableau StabilizerTableau::from_generators(BitMatrix generators) {
  if (generators.rows() <= 0 || generators.cols() != 2 * generators.rows()) {
    throw std::invalid_argument(
        "StabilizerTableau: generator matrix must be n x 2n");
  }
  StabilizerTableau t;
  t.n_ = generators.rows();
  t.generators_ = std::move(generators);
  std::string why;
  if (!t.check_invariants(&why)) {
    throw std::invalid_argument("StabilizerTableau: invalid generators: " + why);
  }
  return t;
}

void StabilizerTableau::apply_two_qubit(const SymplecticGate& gate, int i,
                                        int j) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::invalid_argument("apply_two_qubit: sites must be distinct and in range");
  }
  for (int g = 0; g < n_; ++g) {
    const int v = static_cast<int>(generators_.get(g, i)) |
                  static_cast<int>(generators_.get(g, j)) << 1 |
                  static_cast<int>(generators_.get(g, n_ + i)) << 2 |
                  static_cast<int>(generators_.get(g, n_ + j)) << 3;
    const int w = gate.action[v];
    if (v == w) {
      continue;
    }
    generators_.set(g, i, (w >> 0) & 1);
    generators_.set(g, j, (w >> 1) & 1);
    generators_.set(g, n_ + i, (w >> 2) & 1);
    generators_.set(g, n_ + j, (w >> 3) & 1);
  }
}

MeasurementKind StabilizerTableau::measure_z(int site) {
  if (site < 0 || site >= n_) {
    throw std::invalid_argument("measure_z: site out of range");
  }
  // A generator anticommutes with Z_site iff its x bit at `site` is set.
  int pivot = -1;
  for (int g = 0; g < n_; ++g) {
    if (generators_.get(g, site)) {
      pivot = g;
      break;
    }
  }
  if (pivot < 0) {
    return MeasurementKind::kDeterministic;
  }
  for (int g = pivot + 1; g < n_; ++g) {
    if (generators_.get(g, site)) {
      generators_.xor_row_into(pivot, g);
    }
  }
  generators_.clear_row(pivot);
  generators_.set(pivot, n_ + site, true);
  return MeasurementKind::kRandom;
}

bool StabilizerTableau::check_invariants(std::string* why) const {
  for (int g = 0; g < n_; ++g) {
    if (generators_.row_is_zero(g)) {
      if (why) {
        *why = "zero generator row " + std::to_string(g);
      }
      return false;
    }
  }
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (symplectic_product(generators_, a, b, n_) != 0) {
        if (why) {
          *why = "generators " + std::to_string(a) + " and " +
                 std::to_string(b) + " anticommute";
        }
        return false;
      }
    }
  }
  if (gf2_rank(generators_) != n_) {
    if (why) {
      *why = "generator matrix is rank deficient";
    }
    return false;
  }
  return true;
}

std::string StabilizerTableau::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_) * (2 * n_ + 2));
  for (int g = 0; g < n_; ++g) {
    for (int k = 0; k < n_; ++k) {
      out.push_back(generators_.get(g, k) ? '1' : '0');
    }
    out.push_back('|');
    for (int k = 0; k < n_; ++k) {
      out.push_back(generators_.get(g, n_ + k) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace hrcsim
