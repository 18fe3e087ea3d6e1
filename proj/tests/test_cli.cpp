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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

// The binary under test; exported by ctest as HRCSIM_CLI.
std::string cli_path() {
  const char* path = std::getenv("HRCSIM_CLI");
  REQUIRE_MESSAGE(path != nullptr, "HRCSIM_CLI must point at the built binary");
  return path;
}

CommandResult run_cli(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path fresh_dir() {
  const fs::path dir = fs::temp_directory_path() / "hrcsim_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage_errors_exit_with_1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("run").exit_code == 1);             // missing manifest argument
  CHECK(run_cli("aggregate").exit_code == 1);       // missing inputs
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("--version").output.find("0.1.0") != std::string::npos);
}

TEST_CASE("runtime_failures_exit_with_2") {
  CHECK(run_cli("aggregate /nonexistent.jsonl --observable i3").exit_code == 2);
  const fs::path dir = fresh_dir();
  const fs::path bad = dir / "bad.json";
  write_file(bad, "{\"protocol\": \"chrc\"}");
  CHECK(run_cli("run " + bad.string()).exit_code == 2);
}

TEST_CASE("sweep_aggregate_collapse_pipeline") {
  const fs::path dir = fresh_dir();
  const fs::path manifest = dir / "sweep.json";
  const fs::path records = dir / "records.jsonl";
  write_file(manifest, R"({
    "protocol": "chrc",
    "sizes": [4, 8, 12],
    "rates": [0.2, 0.25, 0.3, 0.35, 0.4],
    "cluster_sizes": [2],
    "trajectories": 6,
    "master_seed": 5,
    "output": ")" + records.string() + R"("
  })");

  const auto run = run_cli("run " + manifest.string());
  CHECK_MESSAGE(run.exit_code == 0, run.output);
  CHECK(fs::exists(records));

  // Resume: the second run schedules everything but executes nothing.
  const auto rerun = run_cli("run " + manifest.string());
  CHECK(rerun.exit_code == 0);
  CHECK(rerun.output.find("executed 0") != std::string::npos);

  const fs::path agg = dir / "agg.json";
  const auto aggregate =
      run_cli("aggregate " + records.string() +
              " --observable i3 --output " + agg.string());
  CHECK_MESSAGE(aggregate.exit_code == 0, aggregate.output);
  const auto parsed = nlohmann::json::parse(std::ifstream(agg));
  CHECK(parsed.at("points").size() == 15);  // 3 sizes x 5 rates
  CHECK(parsed.at("points").at(0).at("n") == 6);

  const fs::path fit = dir / "collapse.json";
  const auto collapse =
      run_cli("collapse " + records.string() +
              " --observable i3 --bootstrap 5 --output " + fit.string());
  CHECK_MESSAGE(collapse.exit_code == 0, collapse.output);
  const auto params = nlohmann::json::parse(std::ifstream(fit));
  CHECK(params.contains("p_c"));
  CHECK(params.contains("nu"));
  CHECK(params.at("rescaled_points").size() == 15);
}

TEST_CASE("power_law_fit_subcommand") {
  const fs::path dir = fresh_dir();
  const fs::path manifest = dir / "fit.json";
  const fs::path records = dir / "records.jsonl";
  write_file(manifest, R"({
    "protocol": "lrhrc",
    "sizes": [4, 8, 12, 16],
    "rates": [0.3],
    "alphas": [1.5],
    "trajectories": 4,
    "master_seed": 6,
    "output": ")" + records.string() + R"("
  })");
  CHECK(run_cli("run " + manifest.string()).exit_code == 0);

  const auto missing_rate = run_cli("fit " + records.string());
  CHECK(missing_rate.exit_code == 1);

  const auto fit = run_cli("fit " + records.string() +
                           " --rate 0.3 --observable s_half");
  CHECK_MESSAGE(fit.exit_code == 0, fit.output);
  CHECK(fit.output.find("exponent") != std::string::npos);
}

TEST_CASE("ancilla_run_and_dynamic_collapse") {
  const fs::path dir = fresh_dir();
  const fs::path manifest = dir / "ancilla.json";
  const fs::path records = dir / "records.jsonl";
  write_file(manifest, R"({
    "protocol": "chrc",
    "mode": "ancilla",
    "sizes": [4, 8, 12],
    "rates": [0.5],
    "cluster_sizes": [2],
    "trajectories": 8,
    "master_seed": 7,
    "output": ")" + records.string() + R"("
  })");
  CHECK(run_cli("run " + manifest.string()).exit_code == 0);

  const auto dyn = run_cli("dyncollapse " + records.string());
  CHECK_MESSAGE(dyn.exit_code == 0, dyn.output);
  CHECK(dyn.output.find("\"z\"") != std::string::npos);
}

TEST_CASE("validate_subcommand") {
  const auto result = run_cli("validate --sizes 4 --circuits 3");
  CHECK_MESSAGE(result.exit_code == 0, result.output);
  CHECK(result.output.find("PASS chrc L=4") != std::string::npos);
  CHECK(result.output.find("PASS lrhrc L=4") != std::string::npos);
}

}  // TEST_SUITE
