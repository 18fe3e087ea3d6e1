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

#include <array>
#include <cstdint>
#include <vector>

#include "hrcsim/bit_matrix.hpp"
#include "hrcsim/rng.hpp"

namespace hrcsim {

/// A two-qubit Clifford gate modulo Pauli factors and global phase: a 4x4
/// symplectic matrix over GF(2) acting on the column vector
/// (x_i, x_j, z_i, z_j).
///
/// `mask` packs the matrix row-major: bit 4*r+c holds entry (r, c).
/// `action` tabulates the linear map on all 16 support vectors, with bit k of
/// the index holding component k of (x_i, x_j, z_i, z_j).
struct SymplecticGate {
  std::uint16_t mask = 0;
  std::array<std::uint8_t, 16> action{};

  static SymplecticGate from_mask(std::uint16_t mask);
  static SymplecticGate identity_gate();

  /// Whether a packed 4x4 matrix s satisfies s^T Omega s = Omega with
  /// Omega = [[0, I2], [I2, 0]].
  static bool mask_is_symplectic(std::uint16_t mask);

  /// Group inverse, Omega s^T Omega.
  SymplecticGate inverse() const;

  BitMatrix to_matrix() const;

  bool entry(int r, int c) const { return (mask >> (4 * r + c)) & 1; }

  bool operator==(const SymplecticGate&) const = default;
};

/// All 720 elements of Sp(4, F2), sorted by mask. Built once, then shared.
const std::vector<SymplecticGate>& two_qubit_clifford_table();

/// Index of a gate within two_qubit_clifford_table(). Throws if absent.
int two_qubit_clifford_index(std::uint16_t mask);

/// Uniform draw from the 720-element table.
const SymplecticGate& sample_two_qubit_clifford(Rng& rng);

}  // namespace hrcsim
