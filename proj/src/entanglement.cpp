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

#include "hrcsim/entanglement.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hrcsim {

int entanglement_entropy(const StabilizerTableau& t, const Region& region) {
  const int n = t.n_qubits();
  region.validate(n);
  const int k = region.size();
  if (k == 0 || k == n) {
    return 0;
  }
  // Generators restricted to the region's x and z columns.
  BitMatrix sub(n, 2 * k);
  for (int g = 0; g < n; ++g) {
    for (int idx = 0; idx < k; ++idx) {
      const int site = region.sites()[idx];
      if (t.x_bit(g, site)) {
        sub.set(g, idx, true);
      }
      if (t.z_bit(g, site)) {
        sub.set(g, k + idx, true);
      }
    }
  }
  return gf2_rank_inplace(sub) - k;
}

int mutual_information(const StabilizerTableau& t, const Region& a,
                       const Region& c) {
  const Region joined = Region::join(a, c);  // throws on overlap
  return entanglement_entropy(t, a) + entanglement_entropy(t, c) -
         entanglement_entropy(t, joined);
}

int tripartite_mutual_information(const StabilizerTableau& t, const Region& a,
                                  const Region& b, const Region& c) {
  const Region ab = Region::join(a, b);
  const Region ac = Region::join(a, c);
  const Region bc = Region::join(b, c);
  const Region abc = Region::join(ab, c);
  return entanglement_entropy(t, a) + entanglement_entropy(t, b) +
         entanglement_entropy(t, c) - entanglement_entropy(t, ab) -
         entanglement_entropy(t, ac) - entanglement_entropy(t, bc) +
         entanglement_entropy(t, abc);
}

int tripartite_mutual_information(const StabilizerTableau& t,
                                  const Quadripartition& q) {
  return tripartite_mutual_information(t, q.a, q.b, q.c);
}

int log_negativity(const StabilizerTableau& t, const Region& a,
                   const Region& b) {
  const int n = t.n_qubits();
  a.validate(n);
  b.validate(n);
  const Region ab = Region::join(a, b);  // throws on overlap
  const Region c = Region::complement(ab, n);

  // Column-targeted elimination on C's columns. Afterwards rows
  // [rank_c, n) span the stabilizers whose support avoids C.
  BitMatrix work = t.generators();
  int rank_c = 0;
  if (!c.empty()) {
    for (const int site : c.sites()) {
      for (const int col : {site, n + site}) {
        int pivot = -1;
        for (int r = rank_c; r < n; ++r) {
          if (work.get(r, col)) {
            pivot = r;
            break;
          }
        }
        if (pivot < 0) {
          continue;
        }
        work.swap_rows(pivot, rank_c);
        for (int r = 0; r < n; ++r) {
          if (r != rank_c && work.get(r, col)) {
            work.xor_row_into(rank_c, r);
          }
        }
        ++rank_c;
      }
    }
  }
  const int m = n - rank_c;
  if (m == 0) {
    return 0;
  }

  // A-restrictions of the kernel rows, split into word-aligned x/z parts.
  const int ka = a.size();
  const int words = (ka + 63) / 64 > 0 ? (ka + 63) / 64 : 1;
  std::vector<std::uint64_t> xs(static_cast<std::size_t>(m) * words, 0);
  std::vector<std::uint64_t> zs(static_cast<std::size_t>(m) * words, 0);
  for (int p = 0; p < m; ++p) {
    const int row = rank_c + p;
    for (int idx = 0; idx < ka; ++idx) {
      const int site = a.sites()[idx];
      if (work.get(row, site)) {
        xs[static_cast<std::size_t>(p) * words + (idx >> 6)] |= 1ULL << (idx & 63);
      }
      if (work.get(row, n + site)) {
        zs[static_cast<std::size_t>(p) * words + (idx >> 6)] |= 1ULL << (idx & 63);
      }
    }
  }

  // J_pq = symplectic product of the A-restrictions; antisymmetric with zero
  // diagonal, so its GF(2) rank is even.
  BitMatrix j(m, m);
  for (int p = 0; p < m; ++p) {
    const std::span<const std::uint64_t> xp(&xs[static_cast<std::size_t>(p) * words], words);
    const std::span<const std::uint64_t> zp(&zs[static_cast<std::size_t>(p) * words], words);
    for (int q = p + 1; q < m; ++q) {
      const std::span<const std::uint64_t> xq(&xs[static_cast<std::size_t>(q) * words], words);
      const std::span<const std::uint64_t> zq(&zs[static_cast<std::size_t>(q) * words], words);
      if (dot_parity(xp, zq) ^ dot_parity(zp, xq)) {
        j.set(p, q, true);
        j.set(q, p, true);
      }
    }
  }
  const int rank_j = gf2_rank_inplace(j);
  if (rank_j % 2 != 0) {
    throw std::logic_error("log_negativity: alternating form has odd rank");
  }
  return rank_j / 2;
}

}  // namespace hrcsim
