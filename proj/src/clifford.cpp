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

#include "hrcsim/clifford.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrcsim {

namespace {

// Applies the packed 4x4 matrix to a 4-bit column vector. Bit k of `v` is
// component k; entry (r, c) of the matrix is bit 4*r+c of `mask`.
std::uint8_t apply_mask(std::uint16_t mask, std::uint8_t v) {
  std::uint8_t out = 0;
  for (int r = 0; r < 4; ++r) {
    const int row_bits = (mask >> (4 * r)) & 0xf;
    const int parity = __builtin_popcount(row_bits & v) & 1;
    out |= static_cast<std::uint8_t>(parity << r);
  }
  return out;
}

std::uint16_t transpose_mask(std::uint16_t mask) {
  std::uint16_t out = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if ((mask >> (4 * r + c)) & 1) {
        out |= static_cast<std::uint16_t>(1u << (4 * c + r));
      }
    }
  }
  return out;
}

std::uint16_t multiply_masks(std::uint16_t a, std::uint16_t b) {
  // (a*b)(r, c) = sum_k a(r, k) b(k, c).
  std::uint16_t out = 0;
  for (int r = 0; r < 4; ++r) {
    const int a_row = (a >> (4 * r)) & 0xf;
    for (int c = 0; c < 4; ++c) {
      int sum = 0;
      for (int k = 0; k < 4; ++k) {
        sum ^= ((a_row >> k) & 1) & ((b >> (4 * k + c)) & 1);
      }
      if (sum) {
        out |= static_cast<std::uint16_t>(1u << (4 * r + c));
      }
    }
  }
  return out;
}

// Omega for the (x_i, x_j, z_i, z_j) ordering: swaps the x block with the
// z block.
constexpr std::uint16_t omega_mask() {
  std::uint16_t m = 0;
  m |= 1u << (4 * 0 + 2);
  m |= 1u << (4 * 1 + 3);
  m |= 1u << (4 * 2 + 0);
  m |= 1u << (4 * 3 + 1);
  return m;
}

constexpr std::uint16_t identity_mask() {
  std::uint16_t m = 0;
  for (int r = 0; r < 4; ++r) {
    m |= 1u << (4 * r + r);
  }
  return m;
}

}  // namespace

SymplecticGate SymplecticGate::from_mask(std::uint16_t mask) {
  if (!mask_is_symplectic(mask)) {
    throw std::invalid_argument("SymplecticGate: mask is not symplectic");
  }
  SymplecticGate g;
  g.mask = mask;
  for (int v = 0; v < 16; ++v) {
    g.action[v] = apply_mask(mask, static_cast<std::uint8_t>(v));
  }
  return g;
}

SymplecticGate SymplecticGate::identity_gate() {
  return from_mask(identity_mask());
}

bool SymplecticGate::mask_is_symplectic(std::uint16_t mask) {
  const std::uint16_t omega = omega_mask();
  return multiply_masks(transpose_mask(mask), multiply_masks(omega, mask)) ==
         omega;
}

SymplecticGate SymplecticGate::inverse() const {
  const std::uint16_t omega = omega_mask();
  return from_mask(
      multiply_masks(omega, multiply_masks(transpose_mask(mask), omega)));
}

BitMatrix SymplecticGate::to_matrix() const {
  BitMatrix m(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m.set(r, c, entry(r, c));
    }
  }
  return m;
}

const std::vector<SymplecticGate>& two_qubit_clifford_table() {
  static const std::vector<SymplecticGate> table = [] {
    std::vector<SymplecticGate> gates;
    gates.reserve(720);
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
      if (SymplecticGate::mask_is_symplectic(static_cast<std::uint16_t>(mask))) {
        gates.push_back(
            SymplecticGate::from_mask(static_cast<std::uint16_t>(mask)));
      }
    }
    if (gates.size() != 720) {
      throw std::logic_error("Sp(4, F2) enumeration did not yield 720 gates");
    }
    return gates;
  }();
  return table;
}

int two_qubit_clifford_index(std::uint16_t mask) {
  const auto& table = two_qubit_clifford_table();
  const auto it = std::lower_bound(
      table.begin(), table.end(), mask,
      [](const SymplecticGate& g, std::uint16_t m) { return g.mask < m; });
  if (it == table.end() || it->mask != mask) {
    throw std::invalid_argument("two_qubit_clifford_index: unknown mask");
  }
  return static_cast<int>(it - table.begin());
}

const SymplecticGate& sample_two_qubit_clifford(Rng& rng) {
  const auto& table = two_qubit_clifford_table();
  return table[rng.below(static_cast<std::uint32_t>(table.size()))];
}

}  // namespace hrcsim
