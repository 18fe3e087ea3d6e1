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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hrcsim/analysis.hpp"
#include "hrcsim/crosscheck.hpp"
#include "hrcsim/records.hpp"
#include "hrcsim/runner.hpp"
#include "hrcsim/version.hpp"

namespace {

using hrcsim::ResultRecord;

std::vector<ResultRecord> read_all(const std::vector<std::string>& paths) {
  std::vector<ResultRecord> records;
  for (const auto& path : paths) {
    auto part = hrcsim::read_records(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

void emit(const nlohmann::ordered_json& j, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + output);
  }
  out << j.dump(2) << '\n';
  std::cerr << "wrote " << output << '\n';
}

struct FilterFlags {
  std::string protocol;
  int cluster_size = 0;
  double alpha = -1.0;
  double rate = -1.0;

  hrcsim::RecordFilter to_filter() const {
    hrcsim::RecordFilter f;
    if (!protocol.empty()) {
      f.kind = hrcsim::circuit_kind_from_string(protocol);
    }
    if (cluster_size > 0) {
      f.cluster_size = cluster_size;
    }
    if (alpha >= 0.0) {
      f.alpha = alpha;
    }
    if (rate >= 0.0) {
      f.rate = rate;
    }
    return f;
  }
};

void add_filter_flags(CLI::App* cmd, FilterFlags& flags) {
  cmd->add_option("--protocol", flags.protocol, "Keep one circuit family")
      ->check(CLI::IsMember({"chrc", "lrhrc"}));
  cmd->add_option("--cluster-size", flags.cluster_size,
                  "Keep one chrc cluster size");
  cmd->add_option("--alpha", flags.alpha, "Keep one lrhrc alpha");
  cmd->add_option("--rate", flags.rate, "Keep one measurement rate");
}

nlohmann::ordered_json dataset_json(const hrcsim::DataSet& data) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : data.points) {
    nlohmann::ordered_json j;
    j["L"] = p.size;
    j["p"] = p.rate;
    j["mean"] = p.mean;
    j["err"] = p.err;
    j["n"] = p.n;
    points.push_back(std::move(j));
  }
  return points;
}

void drop_small_sizes(hrcsim::DataSet& data, int min_size) {
  std::erase_if(data.points,
                [min_size](const hrcsim::DataPoint& p) { return p.size < min_size; });
}

int run_command(const std::string& manifest_path, const std::string& output,
                int workers, std::optional<std::uint64_t> seed_override) {
  hrcsim::RunManifest manifest = hrcsim::RunManifest::from_file(manifest_path);
  if (seed_override) {
    manifest.master_seed = *seed_override;
  }
  std::string out_path = !output.empty() ? output
                         : !manifest.output.empty() ? manifest.output
                                                    : std::string("records.jsonl");
  long last_printed = -1;
  const auto stats = hrcsim::run_manifest(
      manifest, out_path, workers, [&](const hrcsim::RunProgress& p) {
        // Throttled progress line (stderr, overwritten in place).
        if (p.done == p.total || p.done - last_printed >= std::max(1L, p.total / 200)) {
          std::cerr << '\r' << p.done << '/' << p.total << " trajectories" << std::flush;
          last_printed = p.done;
        }
      });
  if (stats.executed > 0) {
    std::cerr << '\n';
  }
  std::cerr << "scheduled " << stats.scheduled << ", skipped " << stats.skipped
            << " (already present), executed " << stats.executed << " -> "
            << out_path << '\n';
  return 0;
}

int aggregate_command(const std::vector<std::string>& inputs,
                      const std::string& observable, const FilterFlags& flags,
                      int min_size, const std::string& output) {
  const auto records = read_all(inputs);
  hrcsim::DataSet data = hrcsim::aggregate_dataset(
      records, hrcsim::observable_from_string(observable), flags.to_filter());
  drop_small_sizes(data, min_size);
  nlohmann::ordered_json j;
  j["observable"] = observable;
  j["points"] = dataset_json(data);
  emit(j, output);
  return 0;
}

int collapse_command(const std::vector<std::string>& inputs,
                     const std::string& observable, const FilterFlags& flags,
                     int min_size, bool free_gamma, double gamma_fixed,
                     std::optional<double> pc_hint, int bootstrap,
                     const std::string& output) {
  const auto records = read_all(inputs);
  hrcsim::DataSet data = hrcsim::aggregate_dataset(
      records, hrcsim::observable_from_string(observable), flags.to_filter());
  drop_small_sizes(data, min_size);

  hrcsim::CollapseOptions options;
  options.gamma_mode = free_gamma ? hrcsim::GammaMode::kFree : hrcsim::GammaMode::kFixed;
  options.gamma_fixed = gamma_fixed;
  options.critical_rate_hint = pc_hint;
  options.bootstrap_resamples = bootstrap;
  const hrcsim::CollapseParams params = hrcsim::fss_collapse(data, options);

  nlohmann::ordered_json j;
  j["observable"] = observable;
  j["gamma_mode"] = free_gamma ? "free" : "fixed";
  j["p_c"] = params.p_c;
  j["p_c_err"] = params.p_c_err;
  j["nu"] = params.nu;
  j["nu_err"] = params.nu_err;
  j["gamma"] = params.gamma;
  j["gamma_err"] = params.gamma_err;
  j["quality"] = params.quality;
  j["converged"] = params.converged;
  if (!params.message.empty()) {
    j["message"] = params.message;
  }
  nlohmann::ordered_json cloud = nlohmann::ordered_json::array();
  for (const auto& sp :
       hrcsim::rescaled_cloud(data, params.p_c, params.nu, params.gamma)) {
    nlohmann::ordered_json pj;
    pj["L"] = sp.size;
    pj["x"] = sp.x;
    pj["y"] = sp.y;
    pj["y_err"] = sp.y_err;
    cloud.push_back(std::move(pj));
  }
  j["rescaled_points"] = std::move(cloud);
  emit(j, output);
  std::cerr << "p_c = " << params.p_c << " +- " << params.p_c_err
            << ", nu = " << params.nu << " +- " << params.nu_err
            << ", gamma = " << params.gamma << " +- " << params.gamma_err
            << ", quality = " << params.quality << '\n';
  return 0;
}

int fit_command(const std::vector<std::string>& inputs,
                const std::string& observable, const FilterFlags& flags,
                int min_size, const std::string& output) {
  if (flags.rate < 0.0) {
    throw std::invalid_argument("fit: --rate is required");
  }
  const auto records = read_all(inputs);
  hrcsim::DataSet data = hrcsim::aggregate_dataset(
      records, hrcsim::observable_from_string(observable), flags.to_filter());
  drop_small_sizes(data, min_size);
  std::vector<hrcsim::PowerLawPoint> points;
  for (const auto& p : data.points) {
    points.push_back({p.size, p.mean, p.err});
  }
  const hrcsim::PowerLawFit fit = hrcsim::fit_power_law(points);

  nlohmann::ordered_json j;
  j["observable"] = observable;
  j["amplitude"] = fit.amplitude;
  j["exponent"] = fit.exponent;
  j["exponent_err"] = fit.exponent_err;
  j["offset"] = fit.offset;
  j["residual"] = fit.residual;
  j["points"] = dataset_json(data);
  emit(j, output);
  std::cerr << "exponent = " << fit.exponent << " +- " << fit.exponent_err << '\n';
  return 0;
}

int dyncollapse_command(const std::vector<std::string>& inputs,
                        const FilterFlags& flags, int min_size,
                        const std::string& output) {
  const auto records = read_all(inputs);
  auto series = hrcsim::aggregate_decay(records, flags.to_filter());
  std::erase_if(series, [min_size](const hrcsim::DecaySeries& s) {
    return s.size < min_size;
  });
  const hrcsim::DynamicCollapseParams params = hrcsim::dynamic_collapse(series);

  nlohmann::ordered_json j;
  j["z"] = params.z;
  j["z_err"] = params.z_err;
  j["quality"] = params.quality;
  nlohmann::ordered_json curves = nlohmann::ordered_json::array();
  for (const auto& s : series) {
    nlohmann::ordered_json sj;
    sj["L"] = s.size;
    sj["mean"] = s.mean;
    sj["err"] = s.err;
    curves.push_back(std::move(sj));
  }
  j["series"] = std::move(curves);
  emit(j, output);
  std::cerr << "z = " << params.z << " +- " << params.z_err << '\n';
  return 0;
}

int validate_command(const std::vector<int>& sizes, int circuits, int steps,
                     double max_rate, std::uint64_t seed) {
  hrcsim::EquivalenceOptions options;
  options.n_circuits = circuits;
  options.n_steps = steps;
  options.max_rate = max_rate;
  options.seed = seed;
  bool ok = true;
  for (const auto kind : {hrcsim::CircuitKind::kChrc, hrcsim::CircuitKind::kLrhrc}) {
    for (const int n : sizes) {
      const auto stats = hrcsim::run_tape_equivalence(kind, n, options);
      const bool pass = stats.mismatches == 0;
      ok = ok && pass;
      std::cout << (pass ? "PASS" : "FAIL") << ' ' << hrcsim::to_string(kind)
                << " L=" << n << ": " << stats.comparisons << " comparisons over "
                << stats.circuits << " circuits";
      if (!pass) {
        std::cout << "; " << stats.mismatches
                  << " mismatches; first: " << stats.first_mismatch;
      }
      std::cout << '\n';
    }
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored Clifford circuit sweeps and scaling analysis"};
  app.set_version_flag("--version", std::string(hrcsim::kVersion));
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a sweep manifest");
  std::string manifest_path, run_output;
  int workers = 0;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  run->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  run->add_option("--output", run_output, "Record file (JSON lines, appended)");
  run->add_option("--workers", workers, "Worker threads (default: hardware)");
  run->add_option("--seed", seed_override, "Override the manifest master seed")
      ->each([&](const std::string&) { seed_given = true; });

  // shared analysis flags
  std::vector<std::string> inputs;
  std::string observable = "i3";
  std::string output;
  FilterFlags flags;
  int min_size = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_observable) {
    cmd->add_option("inputs", inputs, "Record files")->required()->expected(-1);
    if (needs_observable) {
      cmd->add_option("--observable", observable, "Observable column")
          ->check(CLI::IsMember({"s_half", "i2_ac", "i3", "neg_ac"}));
    }
    add_filter_flags(cmd, flags);
    cmd->add_option("--min-size", min_size, "Drop sizes below this value");
    cmd->add_option("--output", output, "Output JSON file (default: stdout)");
  };

  auto* aggregate = app.add_subcommand("aggregate", "Group records into means");
  add_common(aggregate, true);

  auto* collapse = app.add_subcommand(
      "collapse", "Fit (p_c, nu, gamma) by finite-size-scaling collapse");
  add_common(collapse, true);
  bool free_gamma = false;
  double gamma_fixed = 0.0;
  double pc_hint = -1.0;
  int bootstrap = 100;
  collapse->add_flag("--free-gamma", free_gamma, "Fit gamma instead of fixing it");
  collapse->add_option("--gamma", gamma_fixed, "Fixed gamma value (default 0)");
  collapse->add_option("--pc-hint", pc_hint, "Seed for the critical rate search");
  collapse->add_option("--bootstrap", bootstrap, "Bootstrap resamples");

  auto* fit = app.add_subcommand("fit", "Fit a L^kappa power law at one rate");
  observable = "i3";  // reset below after parse; default for fit differs
  add_common(fit, true);

  auto* dyncollapse = app.add_subcommand(
      "dyncollapse", "Fit the dynamical exponent z from reference-qubit decay");
  add_common(dyncollapse, false);

  auto* validate = app.add_subcommand(
      "validate", "Compare the tableau against the dense reference");
  std::vector<int> val_sizes{4, 6, 8};
  int val_circuits = 500;
  int val_steps = 0;
  double val_max_rate = 0.6;
  std::uint64_t val_seed = 1;
  validate->add_option("--sizes", val_sizes, "System sizes");
  validate->add_option("--circuits", val_circuits, "Circuits per size");
  validate->add_option("--steps", val_steps, "Steps per circuit (0: 2L)");
  validate->add_option("--max-rate", val_max_rate, "Upper bound for drawn rates");
  validate->add_option("--seed", val_seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(run)) {
      return run_command(manifest_path, run_output, workers,
                         seed_given ? std::optional<std::uint64_t>(seed_override)
                                    : std::nullopt);
    }
    if (app.got_subcommand(aggregate)) {
      return aggregate_command(inputs, observable, flags, min_size, output);
    }
    if (app.got_subcommand(collapse)) {
      return collapse_command(inputs, observable, flags, min_size, free_gamma,
                              gamma_fixed,
                              pc_hint >= 0.0 ? std::optional<double>(pc_hint)
                                             : std::nullopt,
                              bootstrap, output);
    }
    if (app.got_subcommand(fit)) {
      const std::string obs = fit->count("--observable") ? observable : "neg_ac";
      return fit_command(inputs, obs, flags, min_size, output);
    }
    if (app.got_subcommand(dyncollapse)) {
      return dyncollapse_command(inputs, flags, min_size, output);
    }
    if (app.got_subcommand(validate)) {
      return validate_command(val_sizes, val_circuits, val_steps, val_max_rate,
                              val_seed);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
