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

#include "hrcsim/bit_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace hrcsim {

BitMatrix::BitMatrix(int rows, int cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("BitMatrix: negative dimension");
  }
  n_rows_ = rows;
  n_cols_ = cols;
  words_per_row_ = (cols + 63) / 64;
  words_.assign(static_cast<std::size_t>(rows) * words_per_row_, 0);
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, true);
  }
  return m;
}

void BitMatrix::xor_row_into(int src, int dst) {
  auto* s = words_.data() + static_cast<std::size_t>(src) * words_per_row_;
  auto* d = words_.data() + static_cast<std::size_t>(dst) * words_per_row_;
  for (int w = 0; w < words_per_row_; ++w) {
    d[w] ^= s[w];
  }
}

void BitMatrix::swap_rows(int a, int b) {
  if (a == b) {
    return;
  }
  auto* pa = words_.data() + static_cast<std::size_t>(a) * words_per_row_;
  auto* pb = words_.data() + static_cast<std::size_t>(b) * words_per_row_;
  for (int w = 0; w < words_per_row_; ++w) {
    std::swap(pa[w], pb[w]);
  }
}

void BitMatrix::clear_row(int r) {
  auto* p = words_.data() + static_cast<std::size_t>(r) * words_per_row_;
  for (int w = 0; w < words_per_row_; ++w) {
    p[w] = 0;
  }
}

bool BitMatrix::row_is_zero(int r) const {
  const auto* p = words_.data() + static_cast<std::size_t>(r) * words_per_row_;
  for (int w = 0; w < words_per_row_; ++w) {
    if (p[w] != 0) {
      return false;
    }
  }
  return true;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(n_cols_, n_rows_);
  for (int r = 0; r < n_rows_; ++r) {
    for (int c = 0; c < n_cols_; ++c) {
      if (get(r, c)) {
        t.set(c, r, true);
      }
    }
  }
  return t;
}

std::string BitMatrix::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_rows_) * (n_cols_ + 1));
  for (int r = 0; r < n_rows_; ++r) {
    for (int c = 0; c < n_cols_; ++c) {
      out.push_back(get(r, c) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

int gf2_rank_inplace(BitMatrix& m) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r) {
      if (m.get(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    m.swap_rows(pivot, rank);
    for (int r = rank + 1; r < m.rows(); ++r) {
      if (m.get(r, col)) {
        m.xor_row_into(rank, r);
      }
    }
    ++rank;
  }
  return rank;
}

int gf2_rank(const BitMatrix& m) {
  BitMatrix copy = m;
  return gf2_rank_inplace(copy);
}

Gf2Rref gf2_rref(const BitMatrix& m) {
  Gf2Rref result{m, {}};
  BitMatrix& a = result.matrix;
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < a.rows(); ++r) {
      if (a.get(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    a.swap_rows(pivot, rank);
    for (int r = 0; r < a.rows(); ++r) {
      if (r != rank && a.get(r, col)) {
        a.xor_row_into(rank, r);
      }
    }
    result.pivot_columns.push_back(col);
    ++rank;
  }
  return result;
}

int dot_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot_parity: length mismatch");
  }
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    acc ^= a[w] & b[w];
  }
  return std::popcount(acc) & 1;
}

int symplectic_product(const BitMatrix& m, int row_a, int row_b, int n_qubits) {
  if (m.cols() != 2 * n_qubits) {
    throw std::invalid_argument("symplectic_product: expected 2*n_qubits columns");
  }
  int parity = 0;
  for (int k = 0; k < n_qubits; ++k) {
    parity ^= (m.get(row_a, k) & m.get(row_b, n_qubits + k));
    parity ^= (m.get(row_a, n_qubits + k) & m.get(row_b, k));
  }
  return parity;
}

void extract_bits(const BitMatrix& m, int r, int col0, int count,
                  std::span<std::uint64_t> out) {
  if (col0 < 0 || count < 0 || col0 + count > m.cols()) {
    throw std::invalid_argument("extract_bits: column range out of bounds");
  }
  const int out_words = (count + 63) / 64;
  if (static_cast<int>(out.size()) < out_words) {
    throw std::invalid_argument("extract_bits: output span too small");
  }
  const auto src = m.row(r);
  const int shift = col0 & 63;
  const int first = col0 >> 6;
  for (int w = 0; w < out_words; ++w) {
    const std::size_t lo = static_cast<std::size_t>(first + w);
    std::uint64_t value = lo < src.size() ? src[lo] >> shift : 0;
    if (shift != 0 && lo + 1 < src.size()) {
      value |= src[lo + 1] << (64 - shift);
    }
    out[w] = value;
  }
  const int tail = count & 63;
  if (tail != 0) {
    out[out_words - 1] &= (1ULL << tail) - 1;
  }
  for (std::size_t w = out_words; w < out.size(); ++w) {
    out[w] = 0;
  }
}

}  // namespace hrcsim
