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

namespace hrcsim {

/// One aggregated observable value: mean over trajectories at (size, rate).
struct DataPoint {
  int size = 0;
  double rate = 0.0;
  double mean = 0.0;
  double err = 0.0;  // standard error of the mean
  long n = 0;        // trajectories behind the mean
};

struct DataSet {
  std::vector<DataPoint> points;

  /// Throws on negative errors or duplicate (size, rate) keys.
  void validate() const;
  std::vector<int> sizes() const;        // sorted, unique
  std::vector<double> rates() const;     // sorted, unique
};

enum class GammaMode { kFixed, kFree };

struct CollapseOptions {
  GammaMode gamma_mode = GammaMode::kFixed;
  double gamma_fixed = 0.0;
  /// Seeds the critical-rate grid; when absent, crossing_estimate is tried,
  /// then the middle of the rate range.
  std::optional<double> critical_rate_hint;
  int bootstrap_resamples = 100;
  std::uint64_t bootstrap_seed = 0x5eedb001;
};

struct CollapseParams {
  double p_c = 0.0;
  double nu = 0.0;
  double gamma = 0.0;
  double quality = 0.0;   // objective value at the solution
  double p_c_err = 0.0;   // bootstrap half-widths
  double nu_err = 0.0;
  double gamma_err = 0.0;
  bool converged = true;  // false when the refinement hit its iteration cap
  std::string message;
};

/// One point of a rescaled cloud, exported for plotting.
struct ScaledPoint {
  int size = 0;
  double x = 0.0;
  double y = 0.0;
  double y_err = 0.0;
};

/// Master-curve collapse objective for hypothesis q = L^gamma f((p-p_c)L^(1/nu)).
/// Each point is rescaled to (x, y) = ((p-p_c)L^(1/nu), q/L^gamma) and
/// compared against a weighted local line through its nearest x-neighbors
/// from the other sizes (up to two below, two above; points without a
/// bracketing neighbor on both sides are skipped). Returns the mean of
/// (y - yhat)^2 / (dy^2 + var_yhat) over used points.
double collapse_quality(const DataSet& data, double p_c, double nu,
                        double gamma);

/// Minimizes collapse_quality over (p_c, nu[, gamma]): coarse grid, then
/// Nelder-Mead refinement, then parametric bootstrap (means resampled from
/// their standard errors) for parameter errors. Requires >= 3 sizes and
/// >= 5 rates. Bounds: p_c in (0,1), nu in (0.3,8), gamma in (-1,1.5).
CollapseParams fss_collapse(const DataSet& data,
                            const CollapseOptions& options = {});

/// The rescaled point cloud at given parameters, for external plotting.
std::vector<ScaledPoint> rescaled_cloud(const DataSet& data, double p_c,
                                        double nu, double gamma);

/// Average over size pairs of the abscissae where the two curves cross
/// (sign change of their difference, linearly interpolated between adjacent
/// grid rates). Throws if no pair crosses.
double crossing_estimate(const DataSet& data);

struct PowerLawPoint {
  int size = 0;
  double mean = 0.0;
  double err = 0.0;
};

struct PowerLawFit {
  double amplitude = 0.0;  // a in q = a L^kappa + b
  double exponent = 0.0;   // kappa
  double offset = 0.0;     // b
  double exponent_err = 0.0;
  double residual = 0.0;   // weighted squared residual at the optimum
};

/// Weighted least squares of q = a L^kappa + b: (a, b) are solved in closed
/// form at each kappa, kappa by grid search plus golden-section refinement.
/// Requires >= 4 distinct sizes.
PowerLawFit fit_power_law(std::span<const PowerLawPoint> points,
                          int bootstrap_resamples = 200,
                          std::uint64_t bootstrap_seed = 0x5eedb002);

/// Mean decay curve of one size: value[t] for t = 0..T.
struct DecaySeries {
  int size = 0;
  std::vector<double> mean;
  std::vector<double> err;  // same length; may be zero
};

struct DynamicCollapseOptions {
  int bootstrap_resamples = 100;
  std::uint64_t bootstrap_seed = 0x5eedb003;
};

struct DynamicCollapseParams {
  double z = 0.0;
  double quality = 0.0;
  double z_err = 0.0;
  bool converged = true;
  std::string message;
};

/// Quality of overlaying the curves in scaled time x = t / L^z with no
/// amplitude rescaling (same local-line objective as collapse_quality).
double dynamic_quality(std::span<const DecaySeries> series, double z);

/// Minimizes dynamic_quality over z in (0.1, 2) by grid search plus
/// golden-section refinement; z error by parametric bootstrap. Requires
/// >= 3 sizes and series that actually decay (every curve must drop below
/// 95% of its initial value and at least one below 50%); otherwise throws
/// std::runtime_error.
DynamicCollapseParams dynamic_collapse(std::span<const DecaySeries> series,
                                       const DynamicCollapseOptions& options = {});

/// Synthetic stationary data from q = L^gamma * (-tanh((p-p_c) L^(1/nu)))
/// with Gaussian noise of standard deviation noise * L^gamma per point.
DataSet synthetic_collapse_data(double p_c, double nu, double gamma,
                                std::span<const int> sizes,
                                std::span<const double> rates, double noise,
                                std::uint64_t seed);

/// Synthetic decay curves s_L(t) = exp(-t / L^z) for t = 0..4L with
/// Gaussian noise of standard deviation `noise` per point.
std::vector<DecaySeries> synthetic_decay_series(double z,
                                                std::span<const int> sizes,
                                                double noise,
                                                std::uint64_t seed);

/// Upper regularized incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

/// Upper-tail p-value of a chi-squared statistic.
double chi_squared_pvalue(double statistic, int dof);

}  // namespace hrcsim
