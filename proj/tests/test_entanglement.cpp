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

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hrcsim/clifford.hpp"
#include "hrcsim/region.hpp"
#include "hrcsim/rng.hpp"
#include "hrcsim/tableau.hpp"

namespace {

using hrcsim::BitMatrix;
using hrcsim::Region;
using hrcsim::Rng;
using hrcsim::StabilizerTableau;

// Pauli strings as (x sites, z sites) over n qubits.
StabilizerTableau state_from_paulis(
    int n, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& rows) {
  BitMatrix m(static_cast<int>(rows.size()), 2 * n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const int q : rows[r].first) {
      m.set(static_cast<int>(r), q, true);
    }
    for (const int q : rows[r].second) {
      m.set(static_cast<int>(r), n + q, true);
    }
  }
  return StabilizerTableau::from_generators(std::move(m));
}

StabilizerTableau bell_pair() {
  return state_from_paulis(2, {{{0, 1}, {}}, {{}, {0, 1}}});
}

// |0000> + |1111> up to phases: XXXX, ZZ.., .ZZ., ..ZZ.
StabilizerTableau ghz4() {
  return state_from_paulis(
      4, {{{0, 1, 2, 3}, {}}, {{}, {0, 1}}, {{}, {1, 2}}, {{}, {2, 3}}});
}

StabilizerTableau random_state(int n, int n_gates, Rng& rng) {
  StabilizerTableau t(n);
  for (int k = 0; k < n_gates; ++k) {
    const int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n - 1));
    if (j >= i) {
      ++j;
    }
    t.apply_two_qubit(hrcsim::sample_two_qubit_clifford(rng), i, j);
    if (rng.bernoulli(0.2)) {
      t.measure_z(static_cast<int>(rng.below(n)));
    }
  }
  return t;
}

Region random_region(int n, int size, Rng& rng) {
  std::vector<int> sites(n);
  for (int q = 0; q < n; ++q) {
    sites[q] = q;
  }
  rng.shuffle(sites);
  sites.resize(size);
  return Region(sites);
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("product_state_has_zero_entropy_everywhere") {
  const StabilizerTableau t(6);
  for (int first = 0; first < 6; ++first) {
    for (int count = 0; count <= 6; ++count) {
      CHECK(hrcsim::entanglement_entropy(
                t, Region::contiguous(first, count, 6)) == 0);
    }
  }
}

TEST_CASE("bell_pair_measures") {
  const auto t = bell_pair();
  CHECK(hrcsim::entanglement_entropy(t, Region{0}) == 1);
  CHECK(hrcsim::entanglement_entropy(t, Region{1}) == 1);
  CHECK(hrcsim::entanglement_entropy(t, Region{0, 1}) == 0);
  CHECK(hrcsim::mutual_information(t, Region{0}, Region{1}) == 2);
  CHECK(hrcsim::log_negativity(t, Region{0}, Region{1}) == 1);
}

TEST_CASE("ghz_measures") {
  const auto t = ghz4();
  CHECK(hrcsim::entanglement_entropy(t, Region{0}) == 1);
  CHECK(hrcsim::entanglement_entropy(t, Region{0, 1}) == 1);
  CHECK(hrcsim::entanglement_entropy(t, Region{0, 2}) == 1);
  CHECK(hrcsim::mutual_information(t, Region{0}, Region{2}) == 1);
  // All proper subsets have entropy 1, so the tripartite information is
  // 3*1 - 3*1 + 1 = 1.
  CHECK(hrcsim::tripartite_mutual_information(t, Region{0}, Region{1},
                                              Region{2}) == 1);
}

TEST_CASE("negativity_of_unentangled_pair_is_zero") {
  StabilizerTableau t(4);
  CHECK(hrcsim::log_negativity(t, Region{0}, Region{2}) == 0);
  CHECK(hrcsim::log_negativity(t, Region{}, Region{2}) == 0);
}

TEST_CASE("entropy_bounds_and_purity_on_random_states") {
  Rng rng(0xe1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const auto t = random_state(n, 3 * n, rng);
    const int size = 1 + static_cast<int>(rng.below(n - 1));
    const Region a = random_region(n, size, rng);
    const Region complement = Region::complement(a, n);
    const int s_a = hrcsim::entanglement_entropy(t, a);
    CHECK(s_a >= 0);
    CHECK(s_a <= std::min(a.size(), complement.size()));
    // The state is pure, so complementary regions agree.
    CHECK(s_a == hrcsim::entanglement_entropy(t, complement));
  }
}

TEST_CASE("mutual_information_is_symmetric_and_nonnegative") {
  Rng rng(0xe2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(4));
    const auto t = random_state(n, 3 * n, rng);
    std::vector<int> sites(n);
    for (int q = 0; q < n; ++q) {
      sites[q] = q;
    }
    rng.shuffle(sites);
    const Region a(std::vector<int>(sites.begin(), sites.begin() + 2));
    const Region c(std::vector<int>(sites.begin() + 2, sites.begin() + 4));
    const int i_ac = hrcsim::mutual_information(t, a, c);
    CHECK(i_ac >= 0);
    CHECK(i_ac == hrcsim::mutual_information(t, c, a));
  }
}

TEST_CASE("negativity_is_bounded_by_half_the_mutual_information") {
  Rng rng(0xe3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(4));
    const auto t = random_state(n, 3 * n, rng);
    std::vector<int> sites(n);
    for (int q = 0; q < n; ++q) {
      sites[q] = q;
    }
    rng.shuffle(sites);
    const Region a(std::vector<int>(sites.begin(), sites.begin() + 2));
    const Region c(std::vector<int>(sites.begin() + 2, sites.begin() + 4));
    // 2E <= I2; both sides integers, E possibly half-integer times 2.
    CHECK(2 * hrcsim::log_negativity(t, a, c) <=
          hrcsim::mutual_information(t, a, c));
  }
}

TEST_CASE("quadripartition_overload_matches_explicit_regions") {
  Rng rng(0xe4);
  const auto t = random_state(8, 30, rng);
  const auto q = hrcsim::Quadripartition::equal_blocks(8);
  CHECK(hrcsim::tripartite_mutual_information(t, q) ==
        hrcsim::tripartite_mutual_information(t, q.a, q.b, q.c));
}

TEST_CASE("overlapping_regions_are_rejected") {
  const StabilizerTableau t(4);
  CHECK_THROWS_AS(hrcsim::mutual_information(t, Region{0, 1}, Region{1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hrcsim::log_negativity(t, Region{0}, Region{0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Region({2, 2}), std::invalid_argument);
}

TEST_CASE("region_helpers") {
  const Region r = Region::contiguous(6, 4, 8);  // wraps: 6 7 0 1
  CHECK(r.sites() == std::vector<int>{0, 1, 6, 7});
  CHECK(Region::complement(r, 8).sites() == std::vector<int>{2, 3, 4, 5});
  CHECK(r.contains(7));
  CHECK(!r.contains(2));
  const auto q = hrcsim::Quadripartition::equal_blocks(8);
  CHECK(q.a.sites() == std::vector<int>{0, 1});
  CHECK(q.c.sites() == std::vector<int>{4, 5});
  CHECK_THROWS_AS(hrcsim::Quadripartition::equal_blocks(10),
                  std::invalid_argument);
}

}  // TEST_SUITE
