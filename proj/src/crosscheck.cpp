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

#include "hrcsim/crosscheck.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "hrcsim/entanglement.hpp"
#include "hrcsim/oracle.hpp"

namespace hrcsim {

namespace {

constexpr double kTol = 1e-8;

struct Comparison {
  EquivalenceStats* stats;
  std::string context;

  void check(double dense_value, int tableau_value, const char* what) {
    ++stats->comparisons;
    if (std::abs(dense_value - tableau_value) > kTol) {
      ++stats->mismatches;
      if (stats->first_mismatch.empty()) {
        std::ostringstream oss;
        oss << context << ": " << what << " tableau=" << tableau_value
            << " dense=" << dense_value;
        stats->first_mismatch = oss.str();
      }
    }
  }

  void check_close(double dense_value, double expected, const char* what) {
    ++stats->comparisons;
    if (std::abs(dense_value - expected) > kTol) {
      ++stats->mismatches;
      if (stats->first_mismatch.empty()) {
        std::ostringstream oss;
        oss << context << ": " << what << " expected=" << expected
            << " dense=" << dense_value;
        stats->first_mismatch = oss.str();
      }
    }
  }
};

// Draws `count` distinct sites from a freshly shuffled site list.
std::vector<Region> draw_disjoint_regions(int n_sites,
                                          const std::vector<int>& sizes,
                                          Rng& rng) {
  std::vector<int> sites(n_sites);
  std::iota(sites.begin(), sites.end(), 0);
  rng.shuffle(sites);
  std::vector<Region> regions;
  int next = 0;
  for (const int size : sizes) {
    std::vector<int> chunk(sites.begin() + next, sites.begin() + next + size);
    regions.emplace_back(std::move(chunk));
    next += size;
  }
  return regions;
}

// Measurement layer driven site by site on both representations. The tableau
// decides whether an outcome is determined; collapsing outcomes consume one
// extra variate to pick the dense branch with Born probability.
void lockstep_measurement_layer(StabilizerTableau& t, dense::DenseState& psi,
                                double p, Rng& rng, Comparison& cmp) {
  for (int site = 0; site < t.n_qubits(); ++site) {
    if (rng.uniform() >= p) {
      continue;
    }
    const double p_plus = psi.prob_z_plus(site);
    const MeasurementKind kind = t.measure_z(site);
    if (kind == MeasurementKind::kDeterministic) {
      const bool plus = p_plus > 0.5;
      cmp.check_close(p_plus, plus ? 1.0 : 0.0, "determined branch probability");
      psi.project_z(site, plus);
    } else {
      cmp.check_close(p_plus, 0.5, "collapsing branch probability");
      psi.project_z(site, rng.uniform() < p_plus);
    }
  }
}

void replay_gates(dense::DenseState& psi, const GateLog& log) {
  for (const AppliedGate& g : log) {
    psi.apply_two_qubit(SymplecticGate::from_mask(g.gate_mask), g.site_a,
                        g.site_b);
  }
}

void compare_measures(const StabilizerTableau& t, const dense::DenseState& psi,
                      Rng& rng, Comparison& cmp) {
  const int n = t.n_qubits();

  for (int rep = 0; rep < 2; ++rep) {
    const int size = 1 + static_cast<int>(rng.below(n - 1));
    const auto regions = draw_disjoint_regions(n, {size}, rng);
    cmp.check(dense::dense_entropy(psi, regions[0]),
              entanglement_entropy(t, regions[0]), "entropy");
  }

  {
    const int sa = 1 + static_cast<int>(rng.below(n - 1));
    const int max_c = n - sa;
    if (max_c >= 1) {
      const int sc = 1 + static_cast<int>(rng.below(max_c));
      const auto regions = draw_disjoint_regions(n, {sa, sc}, rng);
      cmp.check(dense::dense_mutual_information(psi, regions[0], regions[1]),
                mutual_information(t, regions[0], regions[1]),
                "mutual information");
      cmp.check(dense::dense_negativity(psi, regions[0], regions[1]),
                log_negativity(t, regions[0], regions[1]), "negativity");
    }
  }

  if (n >= 3) {
    const int sa = 1 + static_cast<int>(rng.below(n - 2));
    const int sb = 1 + static_cast<int>(rng.below(n - 1 - sa));
    const int sc = 1 + static_cast<int>(rng.below(n - sa - sb));
    const auto regions = draw_disjoint_regions(n, {sa, sb, sc}, rng);
    cmp.check(dense::dense_tripartite_mutual_information(psi, regions[0],
                                                         regions[1], regions[2]),
              tripartite_mutual_information(t, regions[0], regions[1],
                                            regions[2]),
              "tripartite mutual information");
  }
}

}  // namespace

EquivalenceStats run_tape_equivalence(CircuitKind kind, int n_sites,
                                      const EquivalenceOptions& options) {
  if (n_sites < 3 || n_sites > 12) {
    throw std::invalid_argument("run_tape_equivalence: n_sites must be in [3, 12]");
  }
  EquivalenceStats stats;
  const int n_steps = options.n_steps > 0 ? options.n_steps : 2 * n_sites;

  std::vector<int> valid_clusters;
  for (int m = 2; m <= n_sites; m += 2) {
    if (n_sites % m == 0) {
      valid_clusters.push_back(m);
    }
  }

  for (int circuit = 0; circuit < options.n_circuits; ++circuit) {
    std::uint64_t h = mix64(options.seed ^ (kind == CircuitKind::kChrc ? 11 : 13));
    h = mix64(h ^ static_cast<std::uint64_t>(n_sites));
    h = mix64(h ^ static_cast<std::uint64_t>(circuit));
    Rng rng(h);

    const double p = rng.uniform() * options.max_rate;
    int cluster = 0;
    std::optional<PairSampler> sampler;
    if (kind == CircuitKind::kChrc) {
      cluster = valid_clusters[rng.below(
          static_cast<std::uint32_t>(valid_clusters.size()))];
    } else {
      const double alpha = rng.uniform() * 4.0;
      const bool chordal = rng.bernoulli(0.5);
      sampler.emplace(n_sites, alpha, chordal);
    }

    StabilizerTableau t(n_sites);
    dense::DenseState psi(n_sites);
    Comparison cmp{&stats, ""};

    ++stats.circuits;
    for (int s = 0; s < n_steps; ++s) {
      {
        std::ostringstream oss;
        oss << to_string(kind) << " L=" << n_sites << " circuit=" << circuit
            << " step=" << s;
        cmp.context = oss.str();
      }
      lockstep_measurement_layer(t, psi, p, rng, cmp);

      GateLog log;
      if (kind == CircuitKind::kChrc) {
        chrc_layer(t, n_sites, cluster, rng, &log);
      } else {
        lrhrc_layer(t, *sampler, rng, &log);
      }
      replay_gates(psi, log);

      compare_measures(t, psi, rng, cmp);
      cmp.check_close(psi.norm(), 1.0, "norm");
      ++stats.steps;
    }
  }
  return stats;
}

}  // namespace hrcsim
