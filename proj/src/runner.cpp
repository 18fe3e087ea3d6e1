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

#include "hrcsim/runner.hpp"

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "hrcsim/version.hpp"

namespace hrcsim {

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.version = j.value("version", 1);
  if (m.version != 1) {
    throw std::runtime_error("unsupported manifest version " +
                             std::to_string(m.version));
  }
  m.kind = circuit_kind_from_string(j.at("protocol").get<std::string>());
  const std::string mode = j.value("mode", std::string("stationary"));
  if (mode != "stationary" && mode != "ancilla") {
    throw std::invalid_argument("unknown manifest mode: " + mode);
  }
  m.ancilla = mode == "ancilla";
  m.sizes = j.at("sizes").get<std::vector<int>>();
  m.rates = j.at("rates").get<std::vector<double>>();
  if (m.kind == CircuitKind::kChrc) {
    m.cluster_sizes = j.at("cluster_sizes").get<std::vector<int>>();
  } else {
    m.alphas = j.at("alphas").get<std::vector<double>>();
    m.chordal = j.value("chordal", false);
  }
  m.n_steps = j.value("steps", 0);
  m.n_trajectories = j.at("trajectories").get<int>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.output = j.value("output", std::string());
  return m;
}

RunManifest RunManifest::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open manifest: " + path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["protocol"] = to_string(kind);
  j["mode"] = ancilla ? "ancilla" : "stationary";
  j["sizes"] = sizes;
  j["rates"] = rates;
  if (kind == CircuitKind::kChrc) {
    j["cluster_sizes"] = cluster_sizes;
  } else {
    j["alphas"] = alphas;
    j["chordal"] = chordal;
  }
  j["steps"] = n_steps;
  j["trajectories"] = n_trajectories;
  j["master_seed"] = master_seed;
  if (!output.empty()) {
    j["output"] = output;
  }
  return j;
}

std::vector<ProtocolConfig> RunManifest::expand() const {
  if (sizes.empty() || rates.empty() || n_trajectories < 1) {
    throw std::invalid_argument(
        "manifest needs sizes, rates, and trajectories >= 1");
  }
  const bool chrc = kind == CircuitKind::kChrc;
  if (chrc ? cluster_sizes.empty() : alphas.empty()) {
    throw std::invalid_argument("manifest is missing protocol parameters");
  }
  std::vector<ProtocolConfig> configs;
  for (const int size : sizes) {
    const int n_params = chrc ? static_cast<int>(cluster_sizes.size())
                              : static_cast<int>(alphas.size());
    for (int k = 0; k < n_params; ++k) {
      for (const double rate : rates) {
        ProtocolConfig cfg;
        cfg.kind = kind;
        cfg.n_sites = size;
        cfg.measurement_rate = rate;
        if (chrc) {
          cfg.cluster_size = cluster_sizes[k];
        } else {
          cfg.alpha = alphas[k];
          cfg.chordal_distance = chordal;
        }
        cfg.n_steps = n_steps;
        cfg.master_seed = master_seed;
        cfg.n_trajectories = n_trajectories;
        cfg.validate();
        if (!ancilla && cfg.n_sites % 4 != 0) {
          throw std::invalid_argument(
              "stationary sweeps need sizes divisible by 4");
        }
        configs.push_back(cfg);
      }
    }
  }
  return configs;
}

namespace {

ResultRecord make_record(const RunManifest& manifest, const ProtocolConfig& cfg,
                         std::uint64_t trajectory_id) {
  ResultRecord r;
  r.kind = cfg.kind;
  r.ancilla = manifest.ancilla;
  r.n_sites = cfg.n_sites;
  r.cluster_size = cfg.cluster_size;
  r.alpha = cfg.alpha;
  r.chordal = cfg.chordal_distance;
  r.rate = cfg.measurement_rate;
  r.n_steps = cfg.steps();
  r.trajectory_id = trajectory_id;
  r.master_seed = cfg.master_seed;
  r.code_version = kVersion;
  if (manifest.ancilla) {
    r.reference_entropy = run_ancilla_trajectory(cfg, trajectory_id).reference_entropy;
  } else {
    r.observables = run_trajectory(cfg, trajectory_id);
  }
  return r;
}

}  // namespace

RunStats run_manifest(const RunManifest& manifest, const std::string& output_path,
                      int workers,
                      const std::function<void(const RunProgress&)>& progress) {
  const std::vector<ProtocolConfig> configs = manifest.expand();
  if (output_path.empty()) {
    throw std::invalid_argument("run_manifest: empty output path");
  }

  std::unordered_set<std::string> existing;
  if (std::filesystem::exists(output_path)) {
    for (const ResultRecord& r : read_records(output_path)) {
      existing.insert(r.key());
    }
  }

  struct Task {
    const ProtocolConfig* config;
    std::uint64_t trajectory_id;
  };
  std::vector<Task> tasks;
  RunStats stats;
  for (const ProtocolConfig& cfg : configs) {
    for (int traj = 0; traj < manifest.n_trajectories; ++traj) {
      ++stats.scheduled;
      ResultRecord probe;
      probe.kind = cfg.kind;
      probe.ancilla = manifest.ancilla;
      probe.n_sites = cfg.n_sites;
      probe.cluster_size = cfg.cluster_size;
      probe.alpha = cfg.alpha;
      probe.chordal = cfg.chordal_distance;
      probe.rate = cfg.measurement_rate;
      probe.n_steps = cfg.steps();
      probe.trajectory_id = static_cast<std::uint64_t>(traj);
      probe.master_seed = cfg.master_seed;
      if (existing.count(probe.key())) {
        ++stats.skipped;
        continue;
      }
      tasks.push_back({&cfg, static_cast<std::uint64_t>(traj)});
    }
  }

  std::ofstream out(output_path, std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + output_path);
  }

  const long total = static_cast<long>(tasks.size());
  if (total == 0) {
    return stats;
  }
  int n_workers = workers > 0
                      ? workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::max(1, static_cast<int>(std::min<long>(n_workers, total)));

  // Workers pull task indices; the writer drains results strictly in task
  // order so the file bytes do not depend on the worker count.
  std::atomic<long> next_task{0};
  std::mutex mutex;
  std::condition_variable ready_cv;
  std::map<long, ResultRecord> ready;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      while (true) {
        const long i = next_task.fetch_add(1);
        if (i >= total) {
          return;
        }
        ResultRecord record =
            make_record(manifest, *tasks[i].config, tasks[i].trajectory_id);
        std::lock_guard<std::mutex> lock(mutex);
        ready.emplace(i, std::move(record));
        ready_cv.notify_all();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next_task.store(total);
      ready_cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back(work);
  }

  for (long expected = 0; expected < total; ++expected) {
    ResultRecord record;
    {
      std::unique_lock<std::mutex> lock(mutex);
      ready_cv.wait(lock, [&] { return failure || ready.count(expected); });
      if (failure) {
        break;
      }
      record = std::move(ready.at(expected));
      ready.erase(expected);
    }
    write_record_line(out, record);
    out.flush();
    ++stats.executed;
    if (progress) {
      progress({stats.executed, total});
    }
  }

  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return stats;
}

}  // namespace hrcsim
