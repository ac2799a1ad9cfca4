#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltlab/estimators.hpp"

namespace ltlab {

/// max_k |estimate_k - reference_k|; the grids must be identical.
double sup_error(const Curve& estimate, const Curve& reference);

struct L2Error {
  double l2_estimate;  // sqrt(mean e^2)
  double std_error;    // delta method: sd(e^2) / (2 l2 sqrt(M))
};

L2Error l2_ensemble_error(std::span<const double> per_path_errors);

/// Monte Carlo estimate of the L2(Omega) sup-norm error of one estimator at
/// one window.
struct EnsembleErrorReport {
  EstimatorKind estimator;
  double eps;
  std::vector<double> per_path_sup_error;
  double l2_estimate;
  double std_error;
  std::size_t n_paths;
};

EnsembleErrorReport make_ensemble_report(EstimatorKind kind, double eps,
                                         std::vector<double> per_path_sup_error);

/// Least squares fit of log(error) = intercept + slope * log(eps).
struct RateReport {
  std::vector<double> eps_values;
  std::vector<double> errors;
  double slope;
  double intercept;
  double r_squared;
};

/// Needs at least 4 points, strictly decreasing eps and positive errors.
RateReport fit_rate(std::span<const double> eps_values, std::span<const double> errors);

/// True if xs never increases, except for at most `allowed_increases` steps
/// that each grow by no more than `max_ratio`.
bool nearly_nonincreasing(std::span<const double> xs, std::size_t allowed_increases = 1,
                          double max_ratio = 1.5);

/// Row-major [n_eps x n_paths] sup errors. Returns the fraction of paths whose
/// error sequence is nonincreasing from the second window onward.
double as_subsequence_check(std::span<const double> errors_by_eps, std::size_t n_eps,
                            std::size_t n_paths, std::span<const double> eps_values);

}  // namespace ltlab
