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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrcsim/analysis.hpp"
#include "hrcsim/protocols.hpp"

namespace hrcsim {

inline constexpr int kRecordVersion = 1;

/// One trajectory's result, serialized as a single JSON line. Records are
/// self-describing: they carry everything needed to re-run the trajectory.
struct ResultRecord {
  int version = kRecordVersion;
  CircuitKind kind = CircuitKind::kChrc;
  bool ancilla = false;
  int n_sites = 0;
  int cluster_size = 0;   // chrc parameter
  double alpha = 0.0;     // lrhrc parameter
  bool chordal = false;
  double rate = 0.0;
  int n_steps = 0;
  std::uint64_t trajectory_id = 0;
  std::uint64_t master_seed = 0;
  std::string code_version;

  StationaryObservables observables;   // valid when !ancilla
  std::vector<int> reference_entropy;  // valid when ancilla

  /// Identity string used for resume bookkeeping: every field that selects
  /// the trajectory, excluding the measured values.
  std::string key() const;

  ProtocolConfig to_config() const;

  nlohmann::ordered_json to_json() const;
  /// Throws std::runtime_error on an unknown format version and
  /// nlohmann::json::exception on malformed fields.
  static ResultRecord from_json(const nlohmann::json& j);
};

/// Reads line-delimited records; blank lines are skipped.
std::vector<ResultRecord> read_records(const std::string& path);

void write_record_line(std::ostream& out, const ResultRecord& record);

enum class Observable {
  kHalfEntropy,
  kMutualInfo,
  kTripartiteInfo,
  kNegativity,
};

std::string to_string(Observable obs);
Observable observable_from_string(const std::string& name);

/// Record subset selector for aggregation. Unset fields match everything.
struct RecordFilter {
  std::optional<CircuitKind> kind;
  std::optional<bool> ancilla;
  std::optional<int> cluster_size;
  std::optional<double> alpha;  // exact match
  std::optional<double> rate;   // exact match
  std::optional<int> n_sites;

  bool matches(const ResultRecord& r) const;
};

/// Groups stationary records by (n_sites, rate) and returns the mean and
/// standard error of one observable per group. Throws if a group mixes
/// protocol parameters (tighten the filter in that case).
DataSet aggregate_dataset(std::span<const ResultRecord> records,
                          Observable observable,
                          const RecordFilter& filter = {});

/// Groups ancilla records by n_sites and averages the reference-entropy
/// series pointwise. All records of a group must share rate, parameters,
/// and series length.
std::vector<DecaySeries> aggregate_decay(std::span<const ResultRecord> records,
                                         const RecordFilter& filter = {});

}  // namespace hrcsim
