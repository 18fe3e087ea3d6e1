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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrcsim/rng.hpp"
#include "hrcsim/tableau.hpp"

namespace hrcsim {

/// Circuit family. "chrc" is the cluster hybrid random circuit: every layer
/// applies, for each site i in order, fresh gates on (i, i+1), ..,
/// (i, i+M-1) with periodic indices. "lrhrc" is the long-range hybrid random
/// circuit: every layer includes each pair (i, j) independently with
/// probability |i-j|^(-alpha) / N and applies fresh gates to the included
/// pairs in a uniformly random order.
enum class CircuitKind { kChrc, kLrhrc };

std::string to_string(CircuitKind kind);
CircuitKind circuit_kind_from_string(const std::string& name);

struct ProtocolConfig {
  CircuitKind kind = CircuitKind::kChrc;
  int n_sites = 0;
  double measurement_rate = 0.0;
  int cluster_size = 0;         // chrc gate range M
  double alpha = 0.0;           // lrhrc decay exponent
  bool chordal_distance = false;  // lrhrc: use ring distance min(r, L-r)
  int n_steps = 0;              // 0 selects the default 4 * n_sites
  std::uint64_t master_seed = 0;
  int n_trajectories = 0;       // consumed by sweep drivers

  int steps() const { return n_steps > 0 ? n_steps : 4 * n_sites; }

  /// Throws std::invalid_argument on violation: measurement_rate in [0,1];
  /// chrc needs cluster_size even with 2 <= cluster_size <= n_sites and
  /// n_sites % cluster_size == 0; lrhrc needs alpha >= 0 and n_sites
  /// divisible by 4 (quadripartition requirement).
  void validate() const;
};

/// Per-distance inclusion probabilities for long-range gate layers.
/// P(r) = w(r) / N with w(r) = r^(-alpha) for linear distance (default) or
/// w(r) = min(r, L-r)^(-alpha) for chordal distance, N = sum_r w(r).
class PairSampler {
 public:
  PairSampler(int n_sites, double alpha, bool chordal);

  int n_sites() const { return n_sites_; }
  double kac_norm() const { return kac_norm_; }

  /// Inclusion probability for a pair at linear distance r = j - i, i < j.
  double pair_probability(int distance) const {
    return prob_by_distance_[distance];
  }

  /// Closed-form expected gate count per layer:
  /// sum_{r=1}^{L-1} (L - r) P(r).
  double expected_gate_count() const { return expected_gate_count_; }

 private:
  int n_sites_ = 0;
  double kac_norm_ = 0.0;
  double expected_gate_count_ = 0.0;
  std::vector<double> prob_by_distance_;  // index r in [1, L-1]
};

struct AppliedGate {
  int site_a = 0;
  int site_b = 0;
  std::uint16_t gate_mask = 0;
};
using GateLog = std::vector<AppliedGate>;

/// Measures each site in [0, n_system) independently with probability p, in
/// site order, drawing one uniform variate per site. Returns how many
/// measurements fired. The tableau may have extra qubits beyond n_system
/// (the ancilla probe); they are never touched.
int measurement_layer(StabilizerTableau& t, int n_system, double p, Rng& rng);

/// One cluster layer: for i = 0..L-1 and range d = 1..M-1 in that order,
/// applies a freshly sampled gate to (i, (i+d) mod L). Exactly L*(M-1) gates.
void chrc_layer(StabilizerTableau& t, int n_system, int cluster_size, Rng& rng,
                GateLog* log = nullptr);

/// One long-range layer. Pair inclusion draws scan i ascending then j
/// ascending; the included pairs are then shuffled once and a fresh gate is
/// drawn per pair in shuffled order. Returns the number of gates applied.
int lrhrc_layer(StabilizerTableau& t, const PairSampler& sampler, Rng& rng,
                GateLog* log = nullptr);

/// Convenience overload that builds the sampler on the fly (linear distance).
int lrhrc_layer(StabilizerTableau& t, int n_system, double alpha, Rng& rng,
                GateLog* log = nullptr);

/// Caches the derived sampling tables of a config and runs time steps:
/// measurement layer first, then the configured unitary layer.
class CircuitDriver {
 public:
  explicit CircuitDriver(const ProtocolConfig& config);

  const ProtocolConfig& config() const { return config_; }
  const PairSampler* sampler() const {
    return sampler_ ? &*sampler_ : nullptr;
  }

  void step(StabilizerTableau& t, Rng& rng, GateLog* log = nullptr) const;

 private:
  ProtocolConfig config_;
  std::optional<PairSampler> sampler_;
};

/// One time step per the free-function form: measurement layer then unitary
/// layer. For lrhrc configs this rebuilds the sampler; prefer CircuitDriver
/// inside loops.
void step(StabilizerTableau& t, const ProtocolConfig& config, Rng& rng);

struct StationaryObservables {
  int half_entropy = 0;      // S(B union C), half the ring
  int mutual_info = 0;       // I2(A:C), antipodal quarters
  int tripartite_info = 0;   // I3(A:B:C)
  int negativity = 0;        // E(A:C)
};

struct AncillaObservables {
  std::vector<int> reference_entropy;  // index t = 0..T; entry 0 is 1
  int preamble_gates = 0;              // gates used to entangle the reference
};

/// Seed for one trajectory's RNG stream: a stable hash of
/// (master_seed, kind, L, M or alpha, p, chordal, trajectory_id), so
/// extending a sweep never perturbs existing trajectories.
std::uint64_t trajectory_seed(const ProtocolConfig& config,
                              std::uint64_t trajectory_id);

/// Runs steps() full time steps from |0...0> and evaluates the stationary
/// observables on the final state over the equal quadripartition.
/// Deterministic given (config, trajectory_id).
StationaryObservables run_trajectory(const ProtocolConfig& config,
                                     std::uint64_t trajectory_id);

/// Reference-qubit probe: a register of n_sites + 1 qubits whose last qubit
/// is entangled with the system by a preamble (one sweep of fresh gates
/// (R,0),(0,1),...,(L-2,L-1), then gates (R,k) over a shuffled k order until
/// entropy({R}) = 1, reshuffling if a sweep completes without success), then
/// steps() time steps acting on the system alone. reference_entropy[t] is
/// entropy({R}) after t steps; it is {0,1}-valued and non-increasing.
AncillaObservables run_ancilla_trajectory(const ProtocolConfig& config,
                                          std::uint64_t trajectory_id);

struct MeanErr {
  double mean = 0.0;
  double sem = 0.0;
  long n = 0;
};

/// Sample mean and standard error of the mean. Throws on fewer than two
/// values.
MeanErr conditional_average(std::span<const double> values);

}  // namespace hrcsim
