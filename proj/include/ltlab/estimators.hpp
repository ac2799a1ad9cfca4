#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ltlab/grid.hpp"
#include "ltlab/numeric.hpp"
#include "ltlab/paths.hpp"

namespace ltlab {

enum class EstimatorKind { J, I1, I2, I3, I4, I5, R, SmoothedQuarter, QuadVar };

std::string_view to_string(EstimatorKind kind);
/// Accepts the canonical names (J, I1 .. I5, R, SmoothedQuarter, QuadVar),
/// case-insensitively.
EstimatorKind parse_estimator(std::string_view name);

/// A time-indexed estimator or oracle output, aligned to grid points.
struct Curve {
  TimeGrid grid;
  std::vector<double> values;
  double eps = 0.0;  // 0 for oracles
  std::optional<EstimatorKind> kind;

  std::size_t size() const noexcept { return values.size(); }
  double back() const noexcept { return values.back(); }
};

/// How I3, I4 and I5 read the forward sample at time t_k. `at_time` is the
/// literal (u + eps) ^ t, realized as index min(i + m, k); `none` reads
/// i + m always and needs the same forward margin as J.
enum class Truncation { at_time, none };

// All estimators are left-endpoint Riemann sums on the path grid, at level 0
// (use shift_level for another level). Window and grid must align with the
// path step; evaluations that need samples past the end of the path throw
// RangeError. Sums run in ascending index order with compensation.

/// (1/eps) sum_{i<k} (1{X_{i+m}>0} - 1{X_i>0}) (X_{i+m} - X_i) dt
Curve j_epsilon(const Path& path, double eps, const TimeGrid& grid);

/// kind must be one of I1 .. I5.
Curve i_family(EstimatorKind kind, const Path& path, double eps, const TimeGrid& grid,
               Truncation truncation = Truncation::at_time);

/// J - I3 - I4 - I5: the part of J not accounted for by the truncated terms.
Curve remainder(const Path& path, double eps, const TimeGrid& grid);

/// (1/eps) sum_{i<k} X_i^+ Phi(-X_i / sqrt(eps)) dt
Curve smoothed_quarter(const Path& path, double eps, const TimeGrid& grid);

/// (1/eps) sum_{i<k} (X_{i+m} - X_i)^2 dt
Curve quadratic_variation_reg(const Path& path, double eps, const TimeGrid& grid);

/// Dispatches on kind.
Curve estimate(EstimatorKind kind, const Path& path, double eps, const TimeGrid& grid);

struct SweepResult {
  double value;
  /// False when the y grid does not extend past the range of the samples
  /// read by J; the value is still returned.
  bool covered;
};

/// Trapezoidal rule over y_grid of f(y) * J_eps(t, y), with J at level y
/// computed on shift_level(path, y).
SweepResult level_sweep(const Path& path, double eps, double t, const FunctionSpec& f,
                        std::span<const double> y_grid);

/// Uniform grid of spacing `step` covering [min X - margin, max X + margin]
/// over the samples J_eps(t, .) reads.
std::vector<double> covering_y_grid(const Path& path, double eps, double t, double step,
                                    double margin);

}  // namespace ltlab
