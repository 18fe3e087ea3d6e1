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

#include "hrcsim/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace hrcsim {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string ResultRecord::key() const {
  std::string k = to_string(kind);
  k += ancilla ? "|ancilla|" : "|stationary|";
  k += std::to_string(n_sites);
  k += '|';
  if (kind == CircuitKind::kChrc) {
    k += std::to_string(cluster_size);
  } else {
    k += format_double(alpha);
    k += chordal ? "|chordal" : "|linear";
  }
  k += '|';
  k += format_double(rate);
  k += '|';
  k += std::to_string(n_steps);
  k += '|';
  k += std::to_string(master_seed);
  k += '|';
  k += std::to_string(trajectory_id);
  return k;
}

ProtocolConfig ResultRecord::to_config() const {
  ProtocolConfig cfg;
  cfg.kind = kind;
  cfg.n_sites = n_sites;
  cfg.measurement_rate = rate;
  cfg.cluster_size = cluster_size;
  cfg.alpha = alpha;
  cfg.chordal_distance = chordal;
  cfg.n_steps = n_steps;
  cfg.master_seed = master_seed;
  return cfg;
}

nlohmann::ordered_json ResultRecord::to_json() const {
  nlohmann::ordered_json j;
  j["v"] = version;
  j["protocol"] = to_string(kind);
  j["mode"] = ancilla ? "ancilla" : "stationary";
  j["L"] = n_sites;
  if (kind == CircuitKind::kChrc) {
    j["M"] = cluster_size;
  } else {
    j["alpha"] = alpha;
    j["chordal"] = chordal;
  }
  j["p"] = rate;
  j["T"] = n_steps;
  j["traj"] = trajectory_id;
  j["master_seed"] = master_seed;
  j["code_version"] = code_version;
  if (ancilla) {
    j["s_r"] = reference_entropy;
  } else {
    j["s_half"] = observables.half_entropy;
    j["i2_ac"] = observables.mutual_info;
    j["i3"] = observables.tripartite_info;
    j["neg_ac"] = observables.negativity;
  }
  return j;
}

ResultRecord ResultRecord::from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.version = j.at("v").get<int>();
  if (r.version != kRecordVersion) {
    throw std::runtime_error("unsupported record version " +
                             std::to_string(r.version));
  }
  r.kind = circuit_kind_from_string(j.at("protocol").get<std::string>());
  r.ancilla = j.at("mode").get<std::string>() == "ancilla";
  r.n_sites = j.at("L").get<int>();
  if (r.kind == CircuitKind::kChrc) {
    r.cluster_size = j.at("M").get<int>();
  } else {
    r.alpha = j.at("alpha").get<double>();
    r.chordal = j.value("chordal", false);
  }
  r.rate = j.at("p").get<double>();
  r.n_steps = j.at("T").get<int>();
  r.trajectory_id = j.at("traj").get<std::uint64_t>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.code_version = j.value("code_version", "");
  if (r.ancilla) {
    r.reference_entropy = j.at("s_r").get<std::vector<int>>();
  } else {
    r.observables.half_entropy = j.at("s_half").get<int>();
    r.observables.mutual_info = j.at("i2_ac").get<int>();
    r.observables.tripartite_info = j.at("i3").get<int>();
    r.observables.negativity = j.at("neg_ac").get<int>();
  }
  return r;
}

std::vector<ResultRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open record file: " + path);
  }
  std::vector<ResultRecord> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    try {
      out.push_back(ResultRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return out;
}

void write_record_line(std::ostream& out, const ResultRecord& record) {
  out << record.to_json().dump() << '\n';
}

std::string to_string(Observable obs) {
  switch (obs) {
    case Observable::kHalfEntropy:
      return "s_half";
    case Observable::kMutualInfo:
      return "i2_ac";
    case Observable::kTripartiteInfo:
      return "i3";
    case Observable::kNegativity:
      return "neg_ac";
  }
  throw std::invalid_argument("to_string: unknown Observable");
}

Observable observable_from_string(const std::string& name) {
  if (name == "s_half") {
    return Observable::kHalfEntropy;
  }
  if (name == "i2_ac") {
    return Observable::kMutualInfo;
  }
  if (name == "i3") {
    return Observable::kTripartiteInfo;
  }
  if (name == "neg_ac") {
    return Observable::kNegativity;
  }
  throw std::invalid_argument("unknown observable: " + name);
}

bool RecordFilter::matches(const ResultRecord& r) const {
  if (kind && r.kind != *kind) {
    return false;
  }
  if (ancilla && r.ancilla != *ancilla) {
    return false;
  }
  if (cluster_size && !(r.kind == CircuitKind::kChrc && r.cluster_size == *cluster_size)) {
    return false;
  }
  if (alpha && !(r.kind == CircuitKind::kLrhrc && r.alpha == *alpha)) {
    return false;
  }
  if (rate && r.rate != *rate) {
    return false;
  }
  if (n_sites && r.n_sites != *n_sites) {
    return false;
  }
  return true;
}

namespace {

double observable_value(const ResultRecord& r, Observable obs) {
  switch (obs) {
    case Observable::kHalfEntropy:
      return r.observables.half_entropy;
    case Observable::kMutualInfo:
      return r.observables.mutual_info;
    case Observable::kTripartiteInfo:
      return r.observables.tripartite_info;
    case Observable::kNegativity:
      return r.observables.negativity;
  }
  throw std::invalid_argument("observable_value: unknown Observable");
}

// Parameter identity of a record, used to detect accidental mixing.
std::string parameter_tag(const ResultRecord& r) {
  if (r.kind == CircuitKind::kChrc) {
    return "chrc:" + std::to_string(r.cluster_size);
  }
  return "lrhrc:" + format_double(r.alpha) + (r.chordal ? ":chordal" : ":linear");
}

struct Accumulator {
  long n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::string tag;

  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double sem() const {
    if (n < 2) {
      return 0.0;
    }
    const double m = mean();
    const double var = std::max(0.0, (sum_sq / static_cast<double>(n) - m * m) *
                                         (static_cast<double>(n) /
                                          (static_cast<double>(n) - 1.0)));
    return std::sqrt(var / static_cast<double>(n));
  }
};

}  // namespace

DataSet aggregate_dataset(std::span<const ResultRecord> records,
                          Observable observable, const RecordFilter& filter) {
  std::map<std::pair<int, double>, Accumulator> groups;
  for (const auto& r : records) {
    if (r.ancilla || !filter.matches(r)) {
      continue;
    }
    auto& acc = groups[{r.n_sites, r.rate}];
    const std::string tag = parameter_tag(r);
    if (acc.n == 0) {
      acc.tag = tag;
    } else if (acc.tag != tag) {
      throw std::invalid_argument(
          "aggregate_dataset: mixed parameters in one (L, p) group; "
          "tighten the filter");
    }
    acc.add(observable_value(r, observable));
  }
  DataSet out;
  for (const auto& [key, acc] : groups) {
    DataPoint p;
    p.size = key.first;
    p.rate = key.second;
    p.mean = acc.mean();
    p.err = acc.sem();
    p.n = acc.n;
    out.points.push_back(p);
  }
  return out;
}

std::vector<DecaySeries> aggregate_decay(std::span<const ResultRecord> records,
                                         const RecordFilter& filter) {
  struct SeriesAccumulator {
    std::vector<double> sum, sum_sq;
    long n = 0;
    std::string tag;
  };
  std::map<int, SeriesAccumulator> groups;
  for (const auto& r : records) {
    if (!r.ancilla || !filter.matches(r)) {
      continue;
    }
    auto& acc = groups[r.n_sites];
    const std::string tag = parameter_tag(r) + "|" + format_double(r.rate);
    if (acc.n == 0) {
      acc.tag = tag;
      acc.sum.assign(r.reference_entropy.size(), 0.0);
      acc.sum_sq.assign(r.reference_entropy.size(), 0.0);
    } else if (acc.tag != tag) {
      throw std::invalid_argument(
          "aggregate_decay: mixed parameters/rates for one size; "
          "tighten the filter");
    } else if (acc.sum.size() != r.reference_entropy.size()) {
      throw std::invalid_argument("aggregate_decay: series length mismatch");
    }
    for (std::size_t t = 0; t < r.reference_entropy.size(); ++t) {
      acc.sum[t] += r.reference_entropy[t];
      acc.sum_sq[t] += static_cast<double>(r.reference_entropy[t]) *
                       r.reference_entropy[t];
    }
    ++acc.n;
  }
  std::vector<DecaySeries> out;
  for (const auto& [size, acc] : groups) {
    DecaySeries s;
    s.size = size;
    const double n = static_cast<double>(acc.n);
    for (std::size_t t = 0; t < acc.sum.size(); ++t) {
      const double mean = acc.sum[t] / n;
      double sem = 0.0;
      if (acc.n >= 2) {
        const double var = std::max(0.0, (acc.sum_sq[t] / n - mean * mean) *
                                             (n / (n - 1.0)));
        sem = std::sqrt(var / n);
      }
      s.mean.push_back(mean);
      s.err.push_back(sem);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hrcsim
