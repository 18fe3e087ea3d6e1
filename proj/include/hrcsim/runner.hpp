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

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrcsim/records.hpp"

namespace hrcsim {

/// A sweep description: the cross product of sizes, rates, and protocol
/// parameters, each run for n_trajectories trajectories.
struct RunManifest {
  int version = 1;
  CircuitKind kind = CircuitKind::kChrc;
  bool ancilla = false;
  std::vector<int> sizes;
  std::vector<double> rates;
  std::vector<int> cluster_sizes;  // chrc sweep values
  std::vector<double> alphas;      // lrhrc sweep values
  bool chordal = false;
  int n_steps = 0;  // 0 selects 4L per size
  int n_trajectories = 0;
  std::uint64_t master_seed = 0;
  std::string output;  // default output path; CLI --output overrides

  static RunManifest from_json(const nlohmann::json& j);
  static RunManifest from_file(const std::string& path);
  nlohmann::ordered_json to_json() const;

  /// The sweep's configs in deterministic order (size-major, then parameter,
  /// then rate). Validates every config before returning; nothing runs if
  /// any combination is invalid.
  std::vector<ProtocolConfig> expand() const;
};

struct RunProgress {
  long done = 0;
  long total = 0;
};

struct RunStats {
  long scheduled = 0;
  long skipped = 0;   // already present in the output file
  long executed = 0;
};

/// Executes the manifest on a worker pool, appending one record per line to
/// `output_path`. Trajectories already present in the file (matched by
/// record key) are skipped. Records are written in deterministic task order
/// regardless of worker count, so equal manifests produce byte-identical
/// files. Workers <= 0 selects the hardware thread count.
RunStats run_manifest(const RunManifest& manifest, const std::string& output_path,
                      int workers,
                      const std::function<void(const RunProgress&)>& progress = {});

}  // namespace hrcsim
