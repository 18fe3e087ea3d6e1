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

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hrcsim/entanglement.hpp"
#include "hrcsim/region.hpp"

namespace hrcsim {

std::string to_string(CircuitKind kind) {
  switch (kind) {
    case CircuitKind::kChrc:
      return "chrc";
    case CircuitKind::kLrhrc:
      return "lrhrc";
  }
  throw std::invalid_argument("to_string: unknown CircuitKind");
}

CircuitKind circuit_kind_from_string(const std::string& name) {
  if (name == "chrc") {
    return CircuitKind::kChrc;
  }
  if (name == "lrhrc") {
    return CircuitKind::kLrhrc;
  }
  throw std::invalid_argument("unknown circuit kind: " + name);
}

void ProtocolConfig::validate() const {
  if (n_sites < 2) {
    throw std::invalid_argument("ProtocolConfig: n_sites must be at least 2");
  }
  if (!(measurement_rate >= 0.0 && measurement_rate <= 1.0)) {
    throw std::invalid_argument(
        "ProtocolConfig: measurement_rate must lie in [0, 1]");
  }
  if (n_steps < 0) {
    throw std::invalid_argument("ProtocolConfig: n_steps must be >= 0");
  }
  switch (kind) {
    case CircuitKind::kChrc:
      if (cluster_size < 2 || cluster_size > n_sites ||
          cluster_size % 2 != 0) {
        throw std::invalid_argument(
            "ProtocolConfig: cluster_size must be even and in [2, n_sites]");
      }
      if (n_sites % cluster_size != 0) {
        throw std::invalid_argument(
            "ProtocolConfig: n_sites must be a multiple of cluster_size");
      }
      break;
    case CircuitKind::kLrhrc:
      if (alpha < 0.0) {
        throw std::invalid_argument("ProtocolConfig: alpha must be >= 0");
      }
      if (n_sites % 4 != 0) {
        throw std::invalid_argument(
            "ProtocolConfig: n_sites must be a multiple of 4");
      }
      break;
  }
}

PairSampler::PairSampler(int n_sites, double alpha, bool chordal) {
  if (n_sites < 2) {
    throw std::invalid_argument("PairSampler: n_sites must be at least 2");
  }
  if (alpha < 0.0) {
    throw std::invalid_argument("PairSampler: alpha must be >= 0");
  }
  n_sites_ = n_sites;
  prob_by_distance_.assign(n_sites, 0.0);
  std::vector<double> weight(n_sites, 0.0);
  for (int r = 1; r < n_sites; ++r) {
    const int effective = chordal ? std::min(r, n_sites - r) : r;
    weight[r] = std::pow(static_cast<double>(effective), -alpha);
    kac_norm_ += weight[r];
  }
  for (int r = 1; r < n_sites; ++r) {
    prob_by_distance_[r] = weight[r] / kac_norm_;
    expected_gate_count_ += (n_sites - r) * prob_by_distance_[r];
  }
}

int measurement_layer(StabilizerTableau& t, int n_system, double p, Rng& rng) {
  if (n_system < 1 || n_system > t.n_qubits()) {
    throw std::invalid_argument("measurement_layer: bad system size");
  }
  int fired = 0;
  for (int site = 0; site < n_system; ++site) {
    if (rng.uniform() < p) {
      t.measure_z(site);
      ++fired;
    }
  }
  return fired;
}

namespace {

void apply_logged_gate(StabilizerTableau& t, int a, int b, Rng& rng,
                       GateLog* log) {
  const SymplecticGate& gate = sample_two_qubit_clifford(rng);
  t.apply_two_qubit(gate, a, b);
  if (log) {
    log->push_back({a, b, gate.mask});
  }
}

}  // namespace

void chrc_layer(StabilizerTableau& t, int n_system, int cluster_size, Rng& rng,
                GateLog* log) {
  if (n_system < 2 || n_system > t.n_qubits()) {
    throw std::invalid_argument("chrc_layer: bad system size");
  }
  if (cluster_size < 2 || cluster_size > n_system) {
    throw std::invalid_argument("chrc_layer: bad cluster size");
  }
  for (int i = 0; i < n_system; ++i) {
    for (int d = 1; d < cluster_size; ++d) {
      apply_logged_gate(t, i, (i + d) % n_system, rng, log);
    }
  }
}

int lrhrc_layer(StabilizerTableau& t, const PairSampler& sampler, Rng& rng,
                GateLog* log) {
  const int n = sampler.n_sites();
  if (n < 2 || n > t.n_qubits()) {
    throw std::invalid_argument("lrhrc_layer: bad system size");
  }
  std::vector<std::pair<int, int>> chosen;
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < sampler.pair_probability(j - i)) {
        chosen.emplace_back(i, j);
      }
    }
  }
  rng.shuffle(chosen);
  for (const auto& [i, j] : chosen) {
    apply_logged_gate(t, i, j, rng, log);
  }
  return static_cast<int>(chosen.size());
}

int lrhrc_layer(StabilizerTableau& t, int n_system, double alpha, Rng& rng,
                GateLog* log) {
  const PairSampler sampler(n_system, alpha, false);
  return lrhrc_layer(t, sampler, rng, log);
}

CircuitDriver::CircuitDriver(const ProtocolConfig& config) : config_(config) {
  config_.validate();
  if (config_.kind == CircuitKind::kLrhrc) {
    sampler_.emplace(config_.n_sites, config_.alpha, config_.chordal_distance);
  }
}

void CircuitDriver::step(StabilizerTableau& t, Rng& rng, GateLog* log) const {
  measurement_layer(t, config_.n_sites, config_.measurement_rate, rng);
  switch (config_.kind) {
    case CircuitKind::kChrc:
      chrc_layer(t, config_.n_sites, config_.cluster_size, rng, log);
      break;
    case CircuitKind::kLrhrc:
      lrhrc_layer(t, *sampler_, rng, log);
      break;
  }
#ifndef NDEBUG
  std::string why;
  if (!t.check_invariants(&why)) {
    throw std::logic_error("tableau invariant broken after step: " + why);
  }
#endif
}

void step(StabilizerTableau& t, const ProtocolConfig& config, Rng& rng) {
  const CircuitDriver driver(config);
  driver.step(t, rng);
}

std::uint64_t trajectory_seed(const ProtocolConfig& config,
                              std::uint64_t trajectory_id) {
  const std::uint64_t param =
      config.kind == CircuitKind::kChrc
          ? static_cast<std::uint64_t>(config.cluster_size)
          : std::bit_cast<std::uint64_t>(config.alpha);
  std::uint64_t h = mix64(config.master_seed ^ 0x243f6a8885a308d3ULL);
  const std::uint64_t parts[] = {
      config.kind == CircuitKind::kChrc ? 1ULL : 2ULL,
      static_cast<std::uint64_t>(config.n_sites),
      param,
      std::bit_cast<std::uint64_t>(config.measurement_rate),
      config.chordal_distance ? 1ULL : 0ULL,
      trajectory_id,
  };
  for (const std::uint64_t part : parts) {
    h = mix64(h ^ (part + 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

StationaryObservables run_trajectory(const ProtocolConfig& config,
                                     std::uint64_t trajectory_id) {
  const CircuitDriver driver(config);
  if (config.n_sites % 4 != 0) {
    throw std::invalid_argument(
        "run_trajectory: n_sites must be a multiple of 4");
  }
  Rng rng(trajectory_seed(config, trajectory_id));
  StabilizerTableau t(config.n_sites);
  const int n_steps = config.steps();
  for (int s = 0; s < n_steps; ++s) {
    driver.step(t, rng);
  }
  const Quadripartition q = Quadripartition::equal_blocks(config.n_sites);
  StationaryObservables out;
  out.half_entropy = entanglement_entropy(t, Region::join(q.b, q.c));
  out.mutual_info = mutual_information(t, q.a, q.c);
  out.tripartite_info = tripartite_mutual_information(t, q);
  out.negativity = log_negativity(t, q.a, q.c);
  return out;
}

AncillaObservables run_ancilla_trajectory(const ProtocolConfig& config,
                                          std::uint64_t trajectory_id) {
  const CircuitDriver driver(config);
  Rng rng(trajectory_seed(config, trajectory_id));
  const int n = config.n_sites;
  const int reference = n;  // last qubit of the register
  StabilizerTableau t(n + 1);
  const Region reference_region{reference};

  AncillaObservables out;

  // Preamble sweep: (R,0) then the chain (0,1), ..., (L-2,L-1).
  apply_logged_gate(t, reference, 0, rng, nullptr);
  ++out.preamble_gates;
  for (int k = 0; k + 1 < n; ++k) {
    apply_logged_gate(t, k, k + 1, rng, nullptr);
    ++out.preamble_gates;
  }
  // Entangle the reference if the sweep left it in a product state: gates
  // (R, k) over shuffled k until entropy({R}) = 1. A fresh random gate fails
  // to entangle only with small probability, so a few sweeps always suffice.
  constexpr int kMaxSweeps = 64;
  int sweeps = 0;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  while (entanglement_entropy(t, reference_region) != 1) {
    if (sweeps >= kMaxSweeps) {
      throw std::logic_error(
          "run_ancilla_trajectory: preamble failed to entangle the reference");
    }
    ++sweeps;
    rng.shuffle(order);
    for (const int k : order) {
      apply_logged_gate(t, reference, k, rng, nullptr);
      ++out.preamble_gates;
      if (entanglement_entropy(t, reference_region) == 1) {
        break;
      }
    }
  }

  const int n_steps = config.steps();
  out.reference_entropy.reserve(n_steps + 1);
  out.reference_entropy.push_back(1);
  for (int s = 0; s < n_steps; ++s) {
    driver.step(t, rng);
    out.reference_entropy.push_back(entanglement_entropy(t, reference_region));
  }
  return out;
}

MeanErr conditional_average(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("conditional_average: need at least two values");
  }
  MeanErr out;
  out.n = static_cast<long>(values.size());
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  out.mean = sum / static_cast<double>(out.n);
  double ss = 0.0;
  for (const double v : values) {
    ss += (v - out.mean) * (v - out.mean);
  }
  out.sem = std::sqrt(ss / (static_cast<double>(out.n) - 1.0) /
                      static_cast<double>(out.n));
  return out;
}

}  // namespace hrcsim
