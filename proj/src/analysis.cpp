#include "ltlab/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ltlab/error.hpp"

namespace ltlab {

double sup_error(const Curve& estimate, const Curve& reference) {
  if (!(estimate.grid == reference.grid) || estimate.size() != reference.size()) {
    throw InvalidArgument("sup_error needs curves on identical grids");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < estimate.size(); ++k) {
    worst = std::max(worst, std::fabs(estimate.values[k] - reference.values[k]));
  }
  return worst;
}

L2Error l2_ensemble_error(std::span<const double> per_path_errors) {
  if (per_path_errors.empty()) throw InvalidArgument("l2_ensemble_error needs at least one path");
  const double n = static_cast<double>(per_path_errors.size());
  CompensatedSum sum;
  for (double e : per_path_errors) sum.add(e * e);
  const double mean_sq = sum.value() / n;
  const double l2 = std::sqrt(mean_sq);
  if (per_path_errors.size() < 2 || l2 == 0.0) return {l2, 0.0};
  CompensatedSum dev;
  for (double e : per_path_errors) {
    const double d = e * e - mean_sq;
    dev.add(d * d);
  }
  const double sd_sq = std::sqrt(dev.value() / (n - 1.0));
  return {l2, sd_sq / (2.0 * l2 * std::sqrt(n))};
}

EnsembleErrorReport make_ensemble_report(EstimatorKind kind, double eps,
                                         std::vector<double> per_path_sup_error) {
  const auto l2 = l2_ensemble_error(per_path_sup_error);
  const auto n = per_path_sup_error.size();
  return {kind, eps, std::move(per_path_sup_error), l2.l2_estimate, l2.std_error, n};
}

RateReport fit_rate(std::span<const double> eps_values, std::span<const double> errors) {
  if (eps_values.size() != errors.size()) throw InvalidArgument("fit_rate: length mismatch");
  if (eps_values.size() < 4) throw InvalidArgument("fit_rate needs at least 4 points");
  for (std::size_t j = 0; j < eps_values.size(); ++j) {
    if (!(eps_values[j] > 0.0) || !(errors[j] > 0.0)) {
      throw InvalidArgument("fit_rate needs strictly positive eps and errors");
    }
    if (j > 0 && !(eps_values[j] < eps_values[j - 1])) {
      throw InvalidArgument("fit_rate needs strictly decreasing eps");
    }
  }
  const std::size_t n = eps_values.size();
  std::vector<double> lx(n), ly(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    lx[j] = std::log(eps_values[j]);
    ly[j] = std::log(errors[j]);
    mx += lx[j];
    my += ly[j];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sxx += (lx[j] - mx) * (lx[j] - mx);
    sxy += (lx[j] - mx) * (ly[j] - my);
    syy += (ly[j] - my) * (ly[j] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = ly[j] - (intercept + slope * lx[j]);
    ss_res += r * r;
  }
  // A constant series is fitted exactly by slope 0.
  const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return {{eps_values.begin(), eps_values.end()}, {errors.begin(), errors.end()},
          slope, intercept, r2};
}

bool nearly_nonincreasing(std::span<const double> xs, std::size_t allowed_increases,
                          double max_ratio) {
  std::size_t increases = 0;
  for (std::size_t j = 1; j < xs.size(); ++j) {
    if (xs[j] > xs[j - 1]) {
      if (++increases > allowed_increases || xs[j] > max_ratio * xs[j - 1]) return false;
    }
  }
  return true;
}

double as_subsequence_check(std::span<const double> errors_by_eps, std::size_t n_eps,
                            std::size_t n_paths, std::span<const double> eps_values) {
  if (n_eps == 0 || n_paths == 0 || errors_by_eps.size() != n_eps * n_paths ||
      eps_values.size() != n_eps) {
    throw InvalidArgument("as_subsequence_check: shape mismatch");
  }
  for (std::size_t j = 0; j < n_eps; ++j) {
    const double n = -std::log(eps_values[j]) / std::log(4.0);
    if (!(eps_values[j] > 0.0) || std::fabs(n - std::nearbyint(n)) > 1e-9) {
      throw InvalidArgument("as_subsequence_check needs eps of the form 4^-n");
    }
    if (j > 0 && std::fabs(eps_values[j] * 4.0 - eps_values[j - 1]) > 1e-12 * eps_values[j - 1]) {
      throw InvalidArgument("as_subsequence_check needs consecutive powers 4^-n");
    }
  }
  std::size_t monotone = 0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    bool ok = true;
    for (std::size_t j = 2; j < n_eps && ok; ++j) {
      ok = errors_by_eps[j * n_paths + p] <= errors_by_eps[(j - 1) * n_paths + p];
    }
    if (ok) ++monotone;
  }
  return static_cast<double>(monotone) / static_cast<double>(n_paths);
}

}  // namespace ltlab
