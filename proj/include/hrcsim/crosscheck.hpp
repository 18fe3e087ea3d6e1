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
#include <string>

#include "hrcsim/protocols.hpp"

namespace hrcsim {

struct EquivalenceOptions {
  int n_circuits = 50;
  int n_steps = 0;  // 0 selects 2 * n_sites
  double max_rate = 0.6;
  std::uint64_t seed = 1;
};

struct EquivalenceStats {
  long circuits = 0;
  long steps = 0;
  long comparisons = 0;
  long mismatches = 0;
  std::string first_mismatch;  // empty when mismatches == 0
};

/// Runs random hybrid circuits simultaneously on a stabilizer tableau and on
/// a dense state vector fed from one shared RNG tape, comparing after every
/// step: entanglement entropies of random regions, mutual information,
/// tripartite mutual information and negativity of random disjoint regions,
/// measurement branch probabilities (exactly 1/2 for collapsing outcomes,
/// 0 or 1 for determined ones), and state norm. Tableau values are integers;
/// dense values must match within 1e-8.
///
/// Each circuit draws its own measurement rate in [0, max_rate] and its own
/// protocol parameter (cluster size, or alpha in [0, 4] with a random
/// distance convention). Mismatches are counted, not thrown.
EquivalenceStats run_tape_equivalence(CircuitKind kind, int n_sites,
                                      const EquivalenceOptions& options = {});

}  // namespace hrcsim
