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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hrcsim {

/// Dense bit matrix over GF(2). Rows are packed into 64-bit words; bit c of a
/// row lives in word c/64 at position c%64. Unused tail bits of the last word
/// in each row are kept zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  static BitMatrix identity(int n);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  int words_per_row() const { return words_per_row_; }

  bool get(int r, int c) const {
    return (words_[word_index(r, c)] >> (c & 63)) & 1ULL;
  }

  void set(int r, int c, bool value) {
    const std::uint64_t mask = 1ULL << (c & 63);
    if (value) {
      words_[word_index(r, c)] |= mask;
    } else {
      words_[word_index(r, c)] &= ~mask;
    }
  }

  std::span<std::uint64_t> row(int r) {
    return {words_.data() + static_cast<std::size_t>(r) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }
  std::span<const std::uint64_t> row(int r) const {
    return {words_.data() + static_cast<std::size_t>(r) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }

  /// row(dst) ^= row(src).
  void xor_row_into(int src, int dst);
  void swap_rows(int a, int b);
  void clear_row(int r);
  bool row_is_zero(int r) const;

  BitMatrix transposed() const;

  /// Rows as '0'/'1' lines, for diagnostics.
  std::string to_string() const;

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t word_index(int r, int c) const {
    return static_cast<std::size_t>(r) * words_per_row_ + (c >> 6);
  }

  int n_rows_ = 0;
  int n_cols_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank over GF(2). Destroys `m` (left in echelon form).
int gf2_rank_inplace(BitMatrix& m);

/// Rank over GF(2) of a copy of `m`.
int gf2_rank(const BitMatrix& m);

struct Gf2Rref {
  BitMatrix matrix;
  std::vector<int> pivot_columns;  // one per nonzero row, strictly increasing
};

/// Reduced row echelon form over GF(2).
Gf2Rref gf2_rref(const BitMatrix& m);

/// Parity of the bitwise AND of two equal-length word spans.
int dot_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Bit vector of length 2n interpreted as a Pauli support (x-part bits [0,n),
/// z-part bits [n,2n)). Returns the symplectic product
/// sum_k (a.x[k] * b.z[k] + a.z[k] * b.x[k]) mod 2.
int symplectic_product(const BitMatrix& m, int row_a, int row_b, int n_qubits);

/// Copies columns [col0, col0+count) of row `r` into `out` starting at bit 0.
/// `out` must hold at least (count+63)/64 words; higher bits are cleared.
void extract_bits(const BitMatrix& m, int r, int col0, int count,
                  std::span<std::uint64_t> out);

}  // namespace hrcsim
