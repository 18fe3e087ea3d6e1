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

#pragma once

#include <string>

#include "hrcsim/bit_matrix.hpp"
#include "hrcsim/clifford.hpp"

namespace hrcsim {

enum class MeasurementKind {
  kDeterministic,  // measured operator was already in the stabilizer group
  kRandom,         // outcome was random; state was projected
};

/// Phase-stripped stabilizer tableau: n generators stored as the rows of an
/// n x 2n bit matrix, row g = (x-part | z-part). Signs are not tracked; every
/// entanglement measure used here is a function of the generator matrix alone.
class StabilizerTableau {
 public:
  /// |0...0>: generators Z_0, ..., Z_{n-1}.
  explicit StabilizerTableau(int n_qubits);

  /// Adopts `generators` (n x 2n) after validating that rows are independent
  /// and pairwise commuting.
  static StabilizerTableau from_generators(BitMatrix generators);

  int n_qubits() const { return n_; }
  const BitMatrix& generators() const { return generators_; }

  bool x_bit(int generator, int site) const {
    return generators_.get(generator, site);
  }
  bool z_bit(int generator, int site) const {
    return generators_.get(generator, n_ + site);
  }

  /// Conjugates every generator by a two-qubit Clifford acting on distinct
  /// sites i and j.
  void apply_two_qubit(const SymplecticGate& gate, int i, int j);

  /// Projective Z measurement at `site`. When some generator anticommutes
  /// with Z_site, the state collapses: the first such generator absorbs the
  /// others and is replaced by Z_site. Otherwise the outcome is determined
  /// and the tableau is unchanged. Phase-stripped, so no outcome is returned.
  MeasurementKind measure_z(int site);

  /// Checks full rank, no zero rows, and pairwise commutation. On failure
  /// returns false and, if `why` is non-null, stores a description.
  bool check_invariants(std::string* why = nullptr) const;

  /// One generator per line as "x-part|z-part", for diagnostics.
  std::string to_string() const;

  bool operator==(const StabilizerTableau&) const = default;

 private:
  StabilizerTableau() = default;

  int n_ = 0;
  BitMatrix generators_;
};

}  // namespace hrcsim
