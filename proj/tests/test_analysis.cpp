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

#include "hrcsim/analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace {

using hrcsim::CollapseOptions;
using hrcsim::DataPoint;
using hrcsim::DataSet;
using hrcsim::DecaySeries;
using hrcsim::GammaMode;
using hrcsim::PowerLawPoint;

const std::vector<int> kSizes = {16, 24, 32, 48, 64};

std::vector<double> rate_grid(double lo, double hi, double step) {
  std::vector<double> rates;
  for (double p = lo; p <= hi + 1e-12; p += step) {
    rates.push_back(p);
  }
  return rates;
}

DataSet reference_synthetic(double noise, std::uint64_t seed) {
  return hrcsim::synthetic_collapse_data(0.3, 1.3, 0.0, kSizes,
                                         rate_grid(0.2, 0.4, 0.02), noise, seed);
}

// Free-amplitude fits trade nu against gamma; recovering all three tightly at
// 5% noise needs a wide size ladder and a dense rate grid.
const std::vector<int> kWideSizes = {8, 12, 16, 24, 32, 48, 64, 96, 128, 192};

DataSet wide_synthetic(double gamma, double noise, std::uint64_t seed) {
  return hrcsim::synthetic_collapse_data(
      0.3, 1.3, gamma, kWideSizes, rate_grid(0.15, 0.45, 0.00375), noise, seed);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("collapse_recovers_synthetic_parameters") {
  const DataSet data = reference_synthetic(0.05, 11);
  CollapseOptions options;
  options.bootstrap_resamples = 25;
  const auto params = hrcsim::fss_collapse(data, options);
  CHECK(params.converged);
  CHECK(std::abs(params.p_c - 0.3) < 0.01);
  CHECK(std::abs(params.nu - 1.3) < 0.1);
  CHECK(params.p_c_err > 0.0);
  CHECK(params.nu_err > 0.0);
}

TEST_CASE("free_gamma_stays_near_zero_when_data_has_none") {
  const DataSet data = wide_synthetic(0.0, 0.05, 12);
  CollapseOptions options;
  options.gamma_mode = GammaMode::kFree;
  options.bootstrap_resamples = 10;
  const auto params = hrcsim::fss_collapse(data, options);
  CHECK(std::abs(params.p_c - 0.3) < 0.01);
  CHECK(std::abs(params.nu - 1.3) < 0.1);
  CHECK(std::abs(params.gamma) < 0.05);
}

TEST_CASE("collapse_recovers_a_nonzero_gamma") {
  const DataSet data = wide_synthetic(0.4, 0.05, 13);
  CollapseOptions options;
  options.gamma_mode = GammaMode::kFree;
  options.bootstrap_resamples = 10;
  const auto params = hrcsim::fss_collapse(data, options);
  CHECK(std::abs(params.p_c - 0.3) < 0.01);
  CHECK(std::abs(params.gamma - 0.4) < 0.1);
}

TEST_CASE("quality_is_minimal_at_the_true_parameters") {
  const DataSet data = reference_synthetic(0.02, 14);
  const double at_truth = hrcsim::collapse_quality(data, 0.3, 1.3, 0.0);
  // Pre-collapsed data scores near its noise floor.
  CHECK(at_truth < 3.0);
  for (const double dp : {-0.04, 0.04}) {
    CHECK(hrcsim::collapse_quality(data, 0.3 + dp, 1.3, 0.0) > at_truth);
  }
  for (const double dnu : {-0.6, 0.9}) {
    CHECK(hrcsim::collapse_quality(data, 0.3, 1.3 + dnu, 0.0) > at_truth);
  }
}

TEST_CASE("quality_is_invariant_under_point_order") {
  DataSet data = reference_synthetic(0.05, 15);
  const double q = hrcsim::collapse_quality(data, 0.31, 1.2, 0.0);
  std::mt19937 gen(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(data.points.begin(), data.points.end(), gen);
    CHECK(hrcsim::collapse_quality(data, 0.31, 1.2, 0.0) == doctest::Approx(q));
  }
}

TEST_CASE("dataset_validation") {
  DataSet data;
  data.points = {{16, 0.1, 1.0, 0.1, 10}, {16, 0.1, 2.0, 0.1, 10}};
  CHECK_THROWS_AS(data.validate(), std::invalid_argument);
  data.points = {{16, 0.1, 1.0, -0.1, 10}};
  CHECK_THROWS_AS(data.validate(), std::invalid_argument);
  data.points = {{16, 0.2, 1.0, 0.1, 10}, {16, 0.1, 1.0, 0.1, 10},
                 {24, 0.1, 1.0, 0.1, 10}};
  CHECK_NOTHROW(data.validate());
  CHECK(data.sizes() == std::vector<int>{16, 24});
  CHECK(data.rates() == std::vector<double>{0.1, 0.2});
}

TEST_CASE("collapse_requires_enough_sizes_and_rates") {
  DataSet thin;
  for (const int size : {16, 24}) {
    for (const double p : {0.1, 0.2, 0.3, 0.35, 0.4}) {
      thin.points.push_back({size, p, 0.5, 0.01, 10});
    }
  }
  CHECK_THROWS_AS(hrcsim::fss_collapse(thin), std::invalid_argument);
}

TEST_CASE("crossing_of_straight_lines_is_exact") {
  // y_L(p) = slope(L) * (p - 0.25) crosses at p = 0.25 for every pair.
  DataSet data;
  int slope = 1;
  for (const int size : {8, 16, 32}) {
    for (const double p : {0.1, 0.2, 0.3, 0.4}) {
      data.points.push_back({size, p, slope * (p - 0.25), 0.0, 1});
    }
    ++slope;
  }
  CHECK(hrcsim::crossing_estimate(data) == doctest::Approx(0.25));
}

TEST_CASE("crossing_requires_a_sign_change") {
  DataSet data;
  for (const int size : {8, 16}) {
    for (const double p : {0.1, 0.2, 0.3}) {
      data.points.push_back({size, p, size + p, 0.0, 1});
    }
  }
  CHECK_THROWS_AS(hrcsim::crossing_estimate(data), std::runtime_error);
}

TEST_CASE("power_law_fit_is_exact_on_clean_data") {
  std::vector<PowerLawPoint> points;
  for (const int size : {8, 16, 32, 64, 128}) {
    points.push_back({size, 2.0 * std::sqrt(size) + 1.0, 0.01});
  }
  const auto fit = hrcsim::fit_power_law(points);
  CHECK(std::abs(fit.exponent - 0.5) < 1e-3);
  CHECK(std::abs(fit.amplitude - 2.0) < 1e-2);
  CHECK(std::abs(fit.offset - 1.0) < 5e-2);
  CHECK(fit.exponent_err < 0.05);
}

TEST_CASE("power_law_fit_recovers_a_negative_exponent_under_noise") {
  std::mt19937 gen(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PowerLawPoint> points;
  for (const int size : {16, 32, 64, 128, 256}) {
    const double q = 1.5 * std::pow(size, -0.4) + 0.2;
    const double err = 0.01 * q;
    points.push_back({size, q + err * gauss(gen), err});
  }
  const auto fit = hrcsim::fit_power_law(points);
  CHECK(std::abs(fit.exponent + 0.4) < 0.1);
}

TEST_CASE("power_law_fit_rejects_degenerate_input") {
  std::vector<PowerLawPoint> few = {{8, 1.0, 0.1}, {16, 2.0, 0.1}, {32, 3.0, 0.1}};
  CHECK_THROWS_AS(hrcsim::fit_power_law(few), std::invalid_argument);
  std::vector<PowerLawPoint> dup = {
      {8, 1.0, 0.1}, {8, 1.1, 0.1}, {16, 2.0, 0.1}, {32, 3.0, 0.1}};
  CHECK_THROWS_AS(hrcsim::fit_power_law(dup), std::invalid_argument);
}

TEST_CASE("dynamic_collapse_recovers_z") {
  const std::vector<int> sizes = {8, 12, 16, 24};
  const auto series = hrcsim::synthetic_decay_series(1.0, sizes, 0.01, 21);
  const auto params = hrcsim::dynamic_collapse(series);
  CHECK(std::abs(params.z - 1.0) < 0.05);
  CHECK(params.z_err > 0.0);
  // Quality degrades monotonically away from the optimum.
  const double at_z = hrcsim::dynamic_quality(series, params.z);
  CHECK(hrcsim::dynamic_quality(series, 0.6) > at_z);
  CHECK(hrcsim::dynamic_quality(series, 1.5) > at_z);
}

TEST_CASE("dynamic_collapse_rejects_flat_series") {
  std::vector<DecaySeries> flat;
  for (const int size : {8, 12, 16}) {
    DecaySeries s;
    s.size = size;
    s.mean.assign(4 * size + 1, 1.0);
    s.err.assign(4 * size + 1, 0.01);
    flat.push_back(std::move(s));
  }
  CHECK_THROWS_AS(hrcsim::dynamic_collapse(flat), std::runtime_error);
}

TEST_CASE("chi_squared_pvalues") {
  // Q(a, x) closed forms: dof 2 gives exp(-s/2).
  for (const double s : {0.5, 2.0, 10.0}) {
    CHECK(hrcsim::chi_squared_pvalue(s, 2) == doctest::Approx(std::exp(-s / 2)));
  }
  // dof 1 gives erfc(sqrt(s/2)).
  for (const double s : {0.5, 4.0}) {
    CHECK(hrcsim::chi_squared_pvalue(s, 1) ==
          doctest::Approx(std::erfc(std::sqrt(s / 2))));
  }
  CHECK(hrcsim::chi_squared_pvalue(0.0, 5) == doctest::Approx(1.0));
  CHECK(hrcsim::chi_squared_pvalue(1000.0, 5) < 1e-12);
  // A statistic equal to its dof is unremarkable.
  CHECK(hrcsim::chi_squared_pvalue(719.0, 719) > 0.4);
}

TEST_CASE("rescaled_cloud_matches_the_scaling_form") {
  DataSet data;
  data.points = {{16, 0.35, 2.0, 0.1, 10}};
  const auto cloud = hrcsim::rescaled_cloud(data, 0.3, 2.0, 0.5);
  REQUIRE(cloud.size() == 1);
  CHECK(cloud[0].x == doctest::Approx(0.05 * std::sqrt(16.0)));
  CHECK(cloud[0].y == doctest::Approx(2.0 / 4.0));
  CHECK(cloud[0].y_err == doctest::Approx(0.1 / 4.0));
}

}  // TEST_SUITE
