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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hrcsim/rng.hpp"

namespace hrcsim {

namespace {

constexpr double kHugeQuality = 1e12;

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// ---------------------------------------------------------------------------
// Local-line master-curve objective shared by the static and dynamic
// collapses.

struct QualityPoint {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
  int group = 0;
};

// Mean over points of (y - yhat)^2 / (dy^2 + var_yhat), with yhat and
// var_yhat from a weighted line through the nearest x-neighbors of other
// groups (up to two on each side; at least one required on both sides).
double local_line_quality(std::vector<QualityPoint> pts) {
  if (pts.size() < 4) {
    return kHugeQuality;
  }
  std::sort(pts.begin(), pts.end(),
            [](const QualityPoint& a, const QualityPoint& b) { return a.x < b.x; });

  double scale = 0.0;
  for (const auto& p : pts) {
    scale = std::max(scale, std::abs(p.y));
  }
  const double floor = 1e-4 * scale + 1e-12;

  const int n = static_cast<int>(pts.size());
  double total = 0.0;
  int used = 0;
  std::vector<const QualityPoint*> nbrs;
  for (int i = 0; i < n; ++i) {
    nbrs.clear();
    int below = 0;
    for (int j = i - 1; j >= 0 && below < 2; --j) {
      if (pts[j].group != pts[i].group) {
        nbrs.push_back(&pts[j]);
        ++below;
      }
    }
    int above = 0;
    for (int j = i + 1; j < n && above < 2; ++j) {
      if (pts[j].group != pts[i].group) {
        nbrs.push_back(&pts[j]);
        ++above;
      }
    }
    if (below == 0 || above == 0) {
      continue;
    }

    double k = 0, kx = 0, ky = 0, kxx = 0, kxy = 0;
    for (const QualityPoint* q : nbrs) {
      const double dq = std::max(q->dy, floor);
      const double w = 1.0 / (dq * dq);
      k += w;
      kx += w * q->x;
      ky += w * q->y;
      kxx += w * q->x * q->x;
      kxy += w * q->x * q->y;
    }
    const double det = k * kxx - kx * kx;
    double yhat, var;
    if (det <= 1e-12 * k * kxx) {
      // Neighbors share one x value; fall back to their weighted mean.
      yhat = ky / k;
      var = 1.0 / k;
    } else {
      const double slope = (k * kxy - kx * ky) / det;
      const double intercept = (kxx * ky - kx * kxy) / det;
      yhat = slope * pts[i].x + intercept;
      var = (kxx - 2.0 * pts[i].x * kx + pts[i].x * pts[i].x * k) / det;
    }
    const double di = std::max(pts[i].dy, floor);
    total += (pts[i].y - yhat) * (pts[i].y - yhat) / (di * di + var);
    ++used;
  }
  if (used < 4) {
    return kHugeQuality;
  }
  return total / used;
}

// ---------------------------------------------------------------------------
// Derivative-free minimizers.

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
};

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& steps,
    int max_iterations, double tolerance) {
  const int d = static_cast<int>(x0.size());
  std::vector<std::vector<double>> simplex(d + 1, x0);
  for (int i = 0; i < d; ++i) {
    simplex[i + 1][i] += steps[i];
  }
  std::vector<double> values(d + 1);
  for (int i = 0; i <= d; ++i) {
    values[i] = f(simplex[i]);
  }

  NelderMeadResult result;
  std::vector<int> order(d + 1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    for (int i = 0; i <= d; ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    const int best = order[0];
    const int worst = order[d];
    const int second = order[d - 1];

    if (values[worst] - values[best] <=
        tolerance * (std::abs(values[best]) + tolerance)) {
      result.converged = true;
      result.x = simplex[best];
      result.value = values[best];
      return result;
    }

    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i <= d; ++i) {
      if (i == worst) {
        continue;
      }
      for (int k = 0; k < d; ++k) {
        centroid[k] += simplex[i][k];
      }
    }
    for (int k = 0; k < d; ++k) {
      centroid[k] /= d;
    }

    auto combine = [&](double t) {
      std::vector<double> p(d);
      for (int k = 0; k < d; ++k) {
        p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      }
      return p;
    };

    const std::vector<double> reflected = combine(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const std::vector<double> expanded = combine(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const std::vector<double> contracted = combine(outside ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == best) {
            continue;
          }
          for (int k = 0; k < d; ++k) {
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          }
          values[i] = f(simplex[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.converged = false;
  result.x = simplex[best_it - values.begin()];
  result.value = *best_it;
  return result;
}

// Golden-section minimization on [lo, hi], assuming a locally unimodal f.
double golden_section(const std::function<double(double)>& f, double lo,
                      double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) {
    return 0.0;
  }
  double mean = 0.0;
  for (const double x : v) {
    mean += x;
  }
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) {
    ss += (x - mean) * (x - mean);
  }
  return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace

// ---------------------------------------------------------------------------
// DataSet

void DataSet::validate() const {
  std::vector<std::pair<int, double>> keys;
  keys.reserve(points.size());
  for (const auto& p : points) {
    if (p.err < 0.0) {
      throw std::invalid_argument("DataSet: negative error");
    }
    if (p.size <= 0) {
      throw std::invalid_argument("DataSet: non-positive size");
    }
    keys.emplace_back(p.size, p.rate);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::invalid_argument("DataSet: duplicate (size, rate) key");
  }
}

std::vector<int> DataSet::sizes() const {
  std::vector<int> out;
  for (const auto& p : points) {
    out.push_back(p.size);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> DataSet::rates() const {
  std::vector<double> out;
  for (const auto& p : points) {
    out.push_back(p.rate);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Static collapse

double collapse_quality(const DataSet& data, double p_c, double nu,
                        double gamma) {
  if (!(nu > 0.0)) {
    return kHugeQuality;
  }
  const std::vector<int> sizes = data.sizes();
  std::vector<QualityPoint> pts;
  pts.reserve(data.points.size());
  for (const auto& p : data.points) {
    const double stretch = std::pow(static_cast<double>(p.size), 1.0 / nu);
    const double amp = std::pow(static_cast<double>(p.size), gamma);
    const int group = static_cast<int>(
        std::lower_bound(sizes.begin(), sizes.end(), p.size) - sizes.begin());
    pts.push_back({(p.rate - p_c) * stretch, p.mean / amp, p.err / amp, group});
  }
  return local_line_quality(std::move(pts));
}

std::vector<ScaledPoint> rescaled_cloud(const DataSet& data, double p_c,
                                        double nu, double gamma) {
  std::vector<ScaledPoint> out;
  out.reserve(data.points.size());
  for (const auto& p : data.points) {
    const double stretch = std::pow(static_cast<double>(p.size), 1.0 / nu);
    const double amp = std::pow(static_cast<double>(p.size), gamma);
    out.push_back({p.size, (p.rate - p_c) * stretch, p.mean / amp, p.err / amp});
  }
  return out;
}

namespace {

struct CollapseBounds {
  double p_lo, p_hi;
};

double bounded_collapse_objective(const DataSet& data, GammaMode mode,
                                  double gamma_fixed,
                                  const std::vector<double>& v) {
  const double p_c = v[0];
  const double nu = v[1];
  const double gamma = mode == GammaMode::kFree ? v[2] : gamma_fixed;
  double penalty = 0.0;
  if (p_c <= 0.0 || p_c >= 1.0) {
    penalty += 1.0 + std::abs(p_c - 0.5);
  }
  if (nu <= 0.3 || nu >= 8.0) {
    penalty += 1.0 + std::abs(nu);
  }
  if (gamma <= -1.0 || gamma >= 1.5) {
    penalty += 1.0 + std::abs(gamma);
  }
  if (penalty > 0.0) {
    return kHugeQuality * penalty;
  }
  return collapse_quality(data, p_c, nu, gamma);
}

}  // namespace

CollapseParams fss_collapse(const DataSet& data, const CollapseOptions& options) {
  data.validate();
  DataSet sorted = data;
  std::sort(sorted.points.begin(), sorted.points.end(),
            [](const DataPoint& a, const DataPoint& b) {
              return std::tie(a.size, a.rate) < std::tie(b.size, b.rate);
            });
  const std::vector<int> sizes = sorted.sizes();
  const std::vector<double> rates = sorted.rates();
  if (sizes.size() < 3) {
    throw std::invalid_argument("fss_collapse: need at least 3 sizes");
  }
  if (rates.size() < 5) {
    throw std::invalid_argument("fss_collapse: need at least 5 rates");
  }
  const double p_lo = rates.front();
  const double p_hi = rates.back();

  double hint;
  if (options.critical_rate_hint) {
    hint = *options.critical_rate_hint;
  } else {
    try {
      hint = crossing_estimate(sorted);
    } catch (const std::exception&) {
      hint = 0.5 * (p_lo + p_hi);
    }
  }
  hint = std::clamp(hint, p_lo, p_hi);

  auto objective = [&](const DataSet& d, const std::vector<double>& v) {
    return bounded_collapse_objective(d, options.gamma_mode,
                                      options.gamma_fixed, v);
  };

  // Coarse grid: full rate range plus a finer window around the hint.
  std::vector<double> pc_grid;
  for (int i = 0; i <= 20; ++i) {
    pc_grid.push_back(p_lo + (p_hi - p_lo) * i / 20.0);
  }
  for (int i = -6; i <= 6; ++i) {
    const double p = hint + 0.01 * i;
    if (p > p_lo && p < p_hi) {
      pc_grid.push_back(p);
    }
  }
  const std::vector<double> nu_grid = {0.4, 0.5, 0.65, 0.8,   1.0, 1.15, 1.3,
                                       1.5, 1.8, 2.2,  2.8, 3.5, 4.5,  6.0};
  std::vector<double> gamma_grid;
  if (options.gamma_mode == GammaMode::kFree) {
    gamma_grid = {-0.8, -0.5, -0.3, -0.15, 0.0, 0.15, 0.3, 0.5, 0.8, 1.1};
  } else {
    gamma_grid = {options.gamma_fixed};
  }

  std::vector<double> best{hint, 1.0};
  if (options.gamma_mode == GammaMode::kFree) {
    best.push_back(0.0);
  }
  double best_value = std::numeric_limits<double>::infinity();
  for (const double pc : pc_grid) {
    for (const double nu : nu_grid) {
      for (const double g : gamma_grid) {
        std::vector<double> v{pc, nu};
        if (options.gamma_mode == GammaMode::kFree) {
          v.push_back(g);
        }
        const double q = objective(sorted, v);
        if (q < best_value) {
          best_value = q;
          best = v;
        }
      }
    }
  }

  std::vector<double> steps{std::max(0.004, (p_hi - p_lo) / 40.0), 0.15};
  if (options.gamma_mode == GammaMode::kFree) {
    steps.push_back(0.08);
  }
  const NelderMeadResult main_fit = nelder_mead(
      [&](const std::vector<double>& v) { return objective(sorted, v); }, best,
      steps, 2000, 1e-10);

  CollapseParams out;
  out.p_c = main_fit.x[0];
  out.nu = main_fit.x[1];
  out.gamma = options.gamma_mode == GammaMode::kFree ? main_fit.x[2]
                                                     : options.gamma_fixed;
  out.quality = main_fit.value;
  out.converged = main_fit.converged;
  if (!main_fit.converged) {
    out.message = "simplex refinement stopped at its iteration cap";
  }

  // Parametric bootstrap: resample point means from their standard errors
  // and re-minimize from the main solution.
  Rng rng(options.bootstrap_seed);
  std::vector<double> pcs, nus, gammas;
  std::vector<double> boot_steps{0.004, 0.05};
  if (options.gamma_mode == GammaMode::kFree) {
    boot_steps.push_back(0.03);
  }
  for (int r = 0; r < options.bootstrap_resamples; ++r) {
    DataSet boot = sorted;
    for (auto& p : boot.points) {
      p.mean += p.err * standard_normal(rng);
    }
    const NelderMeadResult fit = nelder_mead(
        [&](const std::vector<double>& v) { return objective(boot, v); },
        main_fit.x, boot_steps, 400, 1e-9);
    pcs.push_back(fit.x[0]);
    nus.push_back(fit.x[1]);
    if (options.gamma_mode == GammaMode::kFree) {
      gammas.push_back(fit.x[2]);
    }
  }
  out.p_c_err = sample_stddev(pcs);
  out.nu_err = sample_stddev(nus);
  out.gamma_err = options.gamma_mode == GammaMode::kFree ? sample_stddev(gammas) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Crossing estimate

namespace {

double interpolate(const std::vector<std::pair<double, double>>& curve,
                   double x) {
  const auto it = std::lower_bound(
      curve.begin(), curve.end(), x,
      [](const std::pair<double, double>& p, double v) { return p.first < v; });
  if (it == curve.begin()) {
    return it->second;
  }
  if (it == curve.end()) {
    return (it - 1)->second;
  }
  const auto lo = it - 1;
  if (it->first == lo->first) {
    return it->second;
  }
  const double t = (x - lo->first) / (it->first - lo->first);
  return lo->second + t * (it->second - lo->second);
}

}  // namespace

double crossing_estimate(const DataSet& data) {
  data.validate();
  std::map<int, std::vector<std::pair<double, double>>> curves;
  for (const auto& p : data.points) {
    curves[p.size].emplace_back(p.rate, p.mean);
  }
  if (curves.size() < 2) {
    throw std::invalid_argument("crossing_estimate: need at least 2 sizes");
  }
  for (auto& [size, curve] : curves) {
    std::sort(curve.begin(), curve.end());
  }

  std::vector<double> pair_estimates;
  for (auto it_a = curves.begin(); it_a != curves.end(); ++it_a) {
    for (auto it_b = std::next(it_a); it_b != curves.end(); ++it_b) {
      const auto& ca = it_a->second;
      const auto& cb = it_b->second;
      const double lo = std::max(ca.front().first, cb.front().first);
      const double hi = std::min(ca.back().first, cb.back().first);
      if (!(lo < hi)) {
        continue;
      }
      std::vector<double> grid;
      for (const auto& [x, y] : ca) {
        if (x >= lo && x <= hi) {
          grid.push_back(x);
        }
      }
      for (const auto& [x, y] : cb) {
        if (x >= lo && x <= hi) {
          grid.push_back(x);
        }
      }
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      if (grid.size() < 2) {
        continue;
      }
      std::vector<double> crossings;
      double prev_d = interpolate(ca, grid[0]) - interpolate(cb, grid[0]);
      for (std::size_t k = 1; k < grid.size(); ++k) {
        const double d = interpolate(ca, grid[k]) - interpolate(cb, grid[k]);
        if (prev_d == 0.0) {
          crossings.push_back(grid[k - 1]);
        } else if (prev_d * d < 0.0) {
          crossings.push_back(grid[k - 1] + (grid[k] - grid[k - 1]) * prev_d /
                                                (prev_d - d));
        }
        prev_d = d;
      }
      if (interpolate(ca, grid.back()) == interpolate(cb, grid.back())) {
        crossings.push_back(grid.back());
      }
      if (!crossings.empty()) {
        double sum = 0.0;
        for (const double c : crossings) {
          sum += c;
        }
        pair_estimates.push_back(sum / static_cast<double>(crossings.size()));
      }
    }
  }
  if (pair_estimates.empty()) {
    throw std::runtime_error("crossing_estimate: no sign change in any size pair");
  }
  double sum = 0.0;
  for (const double c : pair_estimates) {
    sum += c;
  }
  return sum / static_cast<double>(pair_estimates.size());
}

// ---------------------------------------------------------------------------
// Power-law fit

namespace {

struct PowerLawSolve {
  double chi2 = std::numeric_limits<double>::infinity();
  double a = 0.0;
  double b = 0.0;
};

PowerLawSolve solve_power_law(std::span<const PowerLawPoint> pts, double kappa,
                              double err_floor) {
  double suu = 0, su = 0, sw = 0, suy = 0, sy = 0;
  for (const auto& p : pts) {
    const double e = std::max(p.err, err_floor);
    const double w = 1.0 / (e * e);
    const double u = std::pow(static_cast<double>(p.size), kappa);
    suu += w * u * u;
    su += w * u;
    sw += w;
    suy += w * u * p.mean;
    sy += w * p.mean;
  }
  const double det = suu * sw - su * su;
  PowerLawSolve out;
  if (std::abs(det) <= 1e-12 * suu * sw) {
    // Degenerate design (kappa ~ 0 collapses both columns): offset-only fit.
    out.a = 0.0;
    out.b = sy / sw;
  } else {
    out.a = (sw * suy - su * sy) / det;
    out.b = (suu * sy - su * suy) / det;
  }
  out.chi2 = 0.0;
  for (const auto& p : pts) {
    const double e = std::max(p.err, err_floor);
    const double r = (p.mean - out.a * std::pow(static_cast<double>(p.size), kappa) - out.b) / e;
    out.chi2 += r * r;
  }
  return out;
}

double best_power_law_exponent(std::span<const PowerLawPoint> pts,
                               double err_floor) {
  double best_kappa = 0.0;
  double best_chi2 = std::numeric_limits<double>::infinity();
  for (double kappa = -3.0; kappa <= 3.0 + 1e-12; kappa += 0.02) {
    const double chi2 = solve_power_law(pts, kappa, err_floor).chi2;
    if (chi2 < best_chi2) {
      best_chi2 = chi2;
      best_kappa = kappa;
    }
  }
  return golden_section(
      [&](double k) { return solve_power_law(pts, k, err_floor).chi2; },
      best_kappa - 0.02, best_kappa + 0.02, 1e-7);
}

}  // namespace

PowerLawFit fit_power_law(std::span<const PowerLawPoint> points,
                          int bootstrap_resamples,
                          std::uint64_t bootstrap_seed) {
  if (points.size() < 4) {
    throw std::invalid_argument("fit_power_law: need at least 4 sizes");
  }
  std::vector<int> sizes;
  for (const auto& p : points) {
    if (p.size < 1) {
      throw std::invalid_argument("fit_power_law: sizes must be positive");
    }
    if (p.err < 0.0) {
      throw std::invalid_argument("fit_power_law: negative error");
    }
    sizes.push_back(p.size);
  }
  std::sort(sizes.begin(), sizes.end());
  if (std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw std::invalid_argument("fit_power_law: degenerate (duplicate) sizes");
  }

  double scale = 0.0;
  for (const auto& p : points) {
    scale = std::max(scale, std::abs(p.mean));
  }
  const double err_floor = 1e-6 * scale + 1e-12;

  const double kappa = best_power_law_exponent(points, err_floor);
  const PowerLawSolve solve = solve_power_law(points, kappa, err_floor);

  PowerLawFit out;
  out.exponent = kappa;
  out.amplitude = solve.a;
  out.offset = solve.b;
  out.residual = solve.chi2;

  Rng rng(bootstrap_seed);
  std::vector<double> kappas;
  std::vector<PowerLawPoint> boot(points.begin(), points.end());
  for (int r = 0; r < bootstrap_resamples; ++r) {
    for (std::size_t i = 0; i < boot.size(); ++i) {
      boot[i].mean = points[i].mean + points[i].err * standard_normal(rng);
    }
    kappas.push_back(best_power_law_exponent(boot, err_floor));
  }
  out.exponent_err = sample_stddev(kappas);
  return out;
}

// ---------------------------------------------------------------------------
// Dynamic collapse

double dynamic_quality(std::span<const DecaySeries> series, double z) {
  if (!(z > 0.0)) {
    return kHugeQuality;
  }
  std::vector<QualityPoint> pts;
  int group = 0;
  for (const auto& s : series) {
    const double stretch = std::pow(static_cast<double>(s.size), z);
    for (std::size_t t = 0; t < s.mean.size(); ++t) {
      const double err = t < s.err.size() ? s.err[t] : 0.0;
      pts.push_back({static_cast<double>(t) / stretch, s.mean[t], err, group});
    }
    ++group;
  }
  return local_line_quality(std::move(pts));
}

DynamicCollapseParams dynamic_collapse(std::span<const DecaySeries> series,
                                       const DynamicCollapseOptions& options) {
  if (series.size() < 3) {
    throw std::invalid_argument("dynamic_collapse: need at least 3 sizes");
  }
  std::vector<int> sizes;
  for (const auto& s : series) {
    if (s.size < 2 || s.mean.size() < 4) {
      throw std::invalid_argument("dynamic_collapse: series too short");
    }
    if (!s.err.empty() && s.err.size() != s.mean.size()) {
      throw std::invalid_argument("dynamic_collapse: error length mismatch");
    }
    sizes.push_back(s.size);
  }
  std::sort(sizes.begin(), sizes.end());
  if (std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw std::invalid_argument("dynamic_collapse: duplicate sizes");
  }

  double min_ratio = 1.0;
  for (const auto& s : series) {
    const double start = s.mean.front();
    const double lowest = *std::min_element(s.mean.begin(), s.mean.end());
    const double ratio = lowest / std::max(start, 1e-12);
    min_ratio = std::min(min_ratio, ratio);
    if (ratio > 0.95) {
      throw std::runtime_error(
          "dynamic_collapse: insufficient decay in size " + std::to_string(s.size));
    }
  }
  if (min_ratio > 0.5) {
    throw std::runtime_error("dynamic_collapse: insufficient decay overall");
  }

  auto best_z = [&](std::span<const DecaySeries> data, double lo, double hi) {
    double zg = lo;
    double best_q = std::numeric_limits<double>::infinity();
    for (double z = lo; z <= hi + 1e-12; z += 0.02) {
      const double q = dynamic_quality(data, z);
      if (q < best_q) {
        best_q = q;
        zg = z;
      }
    }
    return golden_section([&](double z) { return dynamic_quality(data, z); },
                          std::max(lo, zg - 0.02), std::min(hi, zg + 0.02),
                          1e-5);
  };

  DynamicCollapseParams out;
  out.z = best_z(series, 0.1, 2.0);
  out.quality = dynamic_quality(series, out.z);
  out.converged = true;

  Rng rng(options.bootstrap_seed);
  std::vector<double> zs;
  std::vector<DecaySeries> boot(series.begin(), series.end());
  for (int r = 0; r < options.bootstrap_resamples; ++r) {
    for (std::size_t i = 0; i < boot.size(); ++i) {
      for (std::size_t t = 0; t < boot[i].mean.size(); ++t) {
        const double err = t < series[i].err.size() ? series[i].err[t] : 0.0;
        boot[i].mean[t] = series[i].mean[t] + err * standard_normal(rng);
      }
    }
    zs.push_back(best_z(boot, std::max(0.1, out.z - 0.3), std::min(2.0, out.z + 0.3)));
  }
  out.z_err = sample_stddev(zs);
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic generators

DataSet synthetic_collapse_data(double p_c, double nu, double gamma,
                                std::span<const int> sizes,
                                std::span<const double> rates, double noise,
                                std::uint64_t seed) {
  Rng rng(seed);
  DataSet out;
  for (const int size : sizes) {
    const double stretch = std::pow(static_cast<double>(size), 1.0 / nu);
    const double amp = std::pow(static_cast<double>(size), gamma);
    for (const double rate : rates) {
      const double x = (rate - p_c) * stretch;
      const double truth = amp * (-std::tanh(x));
      const double err = noise * amp;
      DataPoint p;
      p.size = size;
      p.rate = rate;
      p.err = err;
      p.mean = truth + (err > 0.0 ? err * standard_normal(rng) : 0.0);
      p.n = 400;
      out.points.push_back(p);
    }
  }
  return out;
}

std::vector<DecaySeries> synthetic_decay_series(double z,
                                                std::span<const int> sizes,
                                                double noise,
                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DecaySeries> out;
  for (const int size : sizes) {
    DecaySeries s;
    s.size = size;
    const double timescale = std::pow(static_cast<double>(size), z);
    const int n_steps = 4 * size;
    for (int t = 0; t <= n_steps; ++t) {
      const double truth = std::exp(-static_cast<double>(t) / timescale);
      s.mean.push_back(truth + (noise > 0.0 ? noise * standard_normal(rng) : 0.0));
      s.err.push_back(noise);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chi-squared tail

namespace {

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) {
      break;
    }
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need a > 0 and x >= 0");
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return 1.0 - gamma_p_series(a, x);
  }
  return gamma_q_continued_fraction(a, x);
}

double chi_squared_pvalue(double statistic, int dof) {
  if (dof < 1 || statistic < 0.0) {
    throw std::invalid_argument("chi_squared_pvalue: bad arguments");
  }
  return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace hrcsim
