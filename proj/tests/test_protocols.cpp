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

#include "hrcsim/protocols.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hrcsim/entanglement.hpp"
#include "hrcsim/region.hpp"
#include "hrcsim/rng.hpp"
#include "hrcsim/tableau.hpp"

namespace {

using hrcsim::CircuitKind;
using hrcsim::GateLog;
using hrcsim::PairSampler;
using hrcsim::ProtocolConfig;
using hrcsim::Region;
using hrcsim::Rng;
using hrcsim::StabilizerTableau;

ProtocolConfig chrc_config(int n, double p, int m = 2) {
  ProtocolConfig c;
  c.kind = CircuitKind::kChrc;
  c.n_sites = n;
  c.measurement_rate = p;
  c.cluster_size = m;
  c.master_seed = 7;
  return c;
}

ProtocolConfig lrhrc_config(int n, double p, double alpha) {
  ProtocolConfig c;
  c.kind = CircuitKind::kLrhrc;
  c.n_sites = n;
  c.measurement_rate = p;
  c.alpha = alpha;
  c.master_seed = 7;
  return c;
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("cluster_layer_visits_pairs_in_expansion_order") {
  StabilizerTableau t(6);
  Rng rng(1);
  GateLog log;
  hrcsim::chrc_layer(t, 6, 2, rng, &log);
  REQUIRE(log.size() == 6);  // L * (M - 1)
  const std::vector<std::pair<int, int>> expected = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(log[k].site_a == expected[k].first);
    CHECK(log[k].site_b == expected[k].second);
  }
}

TEST_CASE("cluster_layer_spans_every_offset_below_m") {
  StabilizerTableau t(8);
  Rng rng(2);
  GateLog log;
  hrcsim::chrc_layer(t, 8, 4, rng, &log);
  REQUIRE(log.size() == 8 * 3);
  for (int i = 0; i < 8; ++i) {
    for (int d = 1; d < 4; ++d) {
      const auto& g = log[static_cast<std::size_t>(i) * 3 + d - 1];
      CHECK(g.site_a == i);
      CHECK(g.site_b == (i + d) % 8);
    }
  }
}

TEST_CASE("pair_sampler_normalization") {
  const int n = 16;
  // alpha = 0 weights every distance equally: P = 1/(L-1), and the expected
  // gate count is L/2 exactly.
  const PairSampler flat(n, 0.0, false);
  CHECK(flat.pair_probability(1) == doctest::Approx(1.0 / 15.0));
  CHECK(flat.pair_probability(15) == doctest::Approx(1.0 / 15.0));
  CHECK(flat.expected_gate_count() == doctest::Approx(n / 2.0));
  // Steep decay keeps only distance 1 (linear convention): L-1 such pairs,
  // each with probability ~1.
  const PairSampler steep(n, 50.0, false);
  CHECK(steep.expected_gate_count() == doctest::Approx(n - 1.0));
  // Chordal convention also counts the wrap-around pair at distance 1, and
  // the normalizer doubles: L pairs with probability ~1/2 each.
  const PairSampler chordal(n, 50.0, true);
  CHECK(chordal.pair_probability(1) == doctest::Approx(0.5));
  CHECK(chordal.pair_probability(n - 1) == doctest::Approx(0.5));
  CHECK(chordal.expected_gate_count() == doctest::Approx(n / 2.0));
}

TEST_CASE("long_range_layer_matches_expected_gate_count") {
  Rng rng(0x1f);
  for (const double alpha : {0.0, 2.0}) {
    const int n = 24;
    const PairSampler sampler(n, alpha, false);
    double variance = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double p = sampler.pair_probability(j - i);
        variance += p * (1.0 - p);
      }
    }
    const int layers = 400;
    long total = 0;
    StabilizerTableau t(n);
    for (int k = 0; k < layers; ++k) {
      total += hrcsim::lrhrc_layer(t, sampler, rng, nullptr);
    }
    const double mean = static_cast<double>(total) / layers;
    const double sigma = std::sqrt(variance / layers);
    CHECK(std::abs(mean - sampler.expected_gate_count()) < 4.0 * sigma);
  }
}

TEST_CASE("measurement_layer_rate_extremes") {
  Rng rng(5);
  StabilizerTableau t(8);
  hrcsim::chrc_layer(t, 8, 2, rng, nullptr);
  CHECK(hrcsim::measurement_layer(t, 8, 0.0, rng) == 0);
  CHECK(hrcsim::measurement_layer(t, 8, 1.0, rng) == 8);
  // Measuring every site collapses to a Z product state.
  for (int first = 0; first < 8; ++first) {
    CHECK(hrcsim::entanglement_entropy(t, Region::contiguous(first, 4, 8)) == 0);
  }
}

TEST_CASE("config_validation") {
  CHECK_NOTHROW(chrc_config(8, 0.5).validate());
  CHECK_THROWS_AS(chrc_config(8, -0.1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(chrc_config(8, 1.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(chrc_config(8, 0.5, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(chrc_config(9, 0.5, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(chrc_config(8, 0.5, 10).validate(), std::invalid_argument);
  CHECK_NOTHROW(lrhrc_config(8, 0.5, 1.5).validate());
  CHECK_THROWS_AS(lrhrc_config(8, 0.5, -1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(lrhrc_config(10, 0.5, 1.5).validate(), std::invalid_argument);
  CHECK(chrc_config(8, 0.5).steps() == 32);
}

TEST_CASE("trajectories_are_deterministic_and_seed_stable") {
  const auto config = chrc_config(8, 0.3);
  const auto a = hrcsim::run_trajectory(config, 3);
  const auto b = hrcsim::run_trajectory(config, 3);
  CHECK(a.half_entropy == b.half_entropy);
  CHECK(a.mutual_info == b.mutual_info);
  CHECK(a.tripartite_info == b.tripartite_info);
  CHECK(a.negativity == b.negativity);

  // Seeds depend only on the trajectory identity, not on sweep bookkeeping,
  // so growing a sweep never reruns or perturbs earlier trajectories.
  auto wider = config;
  wider.n_trajectories = 999;
  CHECK(hrcsim::trajectory_seed(config, 5) == hrcsim::trajectory_seed(wider, 5));
  auto other_rate = config;
  other_rate.measurement_rate = 0.31;
  CHECK(hrcsim::trajectory_seed(config, 5) !=
        hrcsim::trajectory_seed(other_rate, 5));
  CHECK(hrcsim::trajectory_seed(config, 5) != hrcsim::trajectory_seed(config, 6));
}

TEST_CASE("stationary_observables_need_a_quadripartition") {
  auto config = chrc_config(6, 0.3);
  config.cluster_size = 2;
  CHECK_THROWS_AS(hrcsim::run_trajectory(config, 0), std::invalid_argument);
}

TEST_CASE("reference_qubit_series_is_binary_and_non_increasing") {
  for (const auto& config :
       {chrc_config(8, 0.4), lrhrc_config(8, 0.4, 1.5)}) {
    for (std::uint64_t id = 0; id < 8; ++id) {
      const auto obs = hrcsim::run_ancilla_trajectory(config, id);
      REQUIRE(obs.reference_entropy.size() ==
              static_cast<std::size_t>(config.steps()) + 1);
      CHECK(obs.reference_entropy.front() == 1);
      CHECK(obs.preamble_gates > 0);
      for (std::size_t k = 0; k < obs.reference_entropy.size(); ++k) {
        const int s = obs.reference_entropy[k];
        CHECK((s == 0 || s == 1));
        if (k > 0) {
          CHECK(s <= obs.reference_entropy[k - 1]);
        }
      }
    }
  }
}

TEST_CASE("reference_qubit_survives_without_measurements") {
  const auto config = chrc_config(8, 0.0);
  const auto obs = hrcsim::run_ancilla_trajectory(config, 1);
  for (const int s : obs.reference_entropy) {
    CHECK(s == 1);
  }
}

TEST_CASE("conditional_average_mean_and_error") {
  const std::vector<double> values = {1.0, 2.0, 3.0};
  const auto stats = hrcsim::conditional_average(values);
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.sem == doctest::Approx(std::sqrt(1.0 / 3.0)));
  CHECK(stats.n == 3);
  const std::vector<double> single = {1.0};
  CHECK_THROWS_AS(hrcsim::conditional_average(single), std::invalid_argument);
}

TEST_CASE("driver_and_free_step_agree") {
  const auto config = lrhrc_config(8, 0.3, 2.0);
  StabilizerTableau a(8), b(8);
  Rng rng_a(99), rng_b(99);
  const hrcsim::CircuitDriver driver(config);
  for (int step = 0; step < 10; ++step) {
    driver.step(a, rng_a);
    hrcsim::step(b, config, rng_b);
  }
  CHECK(a == b);
}

}  // TEST_SUITE
