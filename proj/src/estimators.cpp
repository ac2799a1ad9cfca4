#include "ltlab/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "ltlab/error.hpp"

namespace ltlab {

namespace {

constexpr EstimatorKind kAllKinds[] = {
    EstimatorKind::J,  EstimatorKind::I1, EstimatorKind::I2,
    EstimatorKind::I3, EstimatorKind::I4, EstimatorKind::I5,
    EstimatorKind::R,  EstimatorKind::SmoothedQuarter, EstimatorKind::QuadVar};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

struct Setup {
  Window window;
  double scale;  // dt / eps
};

// Checks alignment and that the grid lies within the horizon. `forward`
// requests the untruncated lookahead X_{i+m} for all i < max grid index.
Setup prepare(const Path& path, double eps, const TimeGrid& grid, bool forward) {
  const auto window = Window::from_seconds(eps, path.dt());
  if (std::fabs(grid.dt() - path.dt()) > 1e-12 * path.dt()) {
    throw AlignmentError("time grid step differs from the path step");
  }
  if (!grid.empty() && grid.back() > path.horizon_steps()) {
    throw RangeError("time grid extends past the path horizon");
  }
  if (forward && !grid.empty() && grid.back() > 0 &&
      grid.back() - 1 + window.steps > path.steps()) {
    throw RangeError("path lacks the forward margin for eps = " + std::to_string(eps) +
                     " at t = " + std::to_string(grid.seconds(grid.size() - 1)));
  }
  return {window, path.dt() / window.seconds()};
}

// Emits scale * sum_{i<k} term(i) at each grid index k, one ascending pass.
template <class Term>
std::vector<double> accumulate(const TimeGrid& grid, double scale, Term term) {
  std::vector<double> out;
  out.reserve(grid.size());
  CompensatedSum sum;
  std::size_t i = 0;
  for (std::size_t k : grid.indices()) {
    for (; i < k; ++i) sum.add(term(i));
    out.push_back(scale * sum.value());
  }
  return out;
}

Curve make_curve(const TimeGrid& grid, std::vector<double> values, double eps,
                 EstimatorKind kind) {
  return Curve{grid, std::move(values), eps, kind};
}

// Term pairs g(a, b) for a = X_i and b the forward sample.
double i3_term(double a, double b) {
  return a <= 0.0 ? positive_part(b) : negative_part(b);
}
double i4_term(double a, double b) { return b > 0.0 ? negative_part(a) : 0.0; }
double i5_term(double a, double b) { return b <= 0.0 ? positive_part(a) : 0.0; }

// Truncated sums for I3, I4, I5: sum_{i<k} g(X_i, X_{min(i+m,k)}). Terms with
// i + m < k read X_{i+m}; the last m terms read X_k and factor through
// windowed sums of functions of X_i alone, kept as the difference of a
// leading and a lagging running sum.
std::vector<double> truncated_sum(EstimatorKind kind, const Path& path, std::size_t m,
                                  const TimeGrid& grid, double scale) {
  std::vector<double> out;
  out.reserve(grid.size());
  if (grid.empty()) return out;
  const auto x = path.values();
  const auto idx = grid.indices();

  auto pair_term = [&](double a, double b) {
    switch (kind) {
      case EstimatorKind::I3: return i3_term(a, b);
      case EstimatorKind::I4: return i4_term(a, b);
      default: return i5_term(a, b);
    }
  };
  // I3: counts of X_i <= 0 and X_i > 0; I4: X_i^-; I5: X_i^+.
  auto first_weight = [&](double a) {
    switch (kind) {
      case EstimatorKind::I3: return a <= 0.0 ? 1.0 : 0.0;
      case EstimatorKind::I4: return negative_part(a);
      default: return positive_part(a);
    }
  };
  auto second_weight = [&](double a) { return a > 0.0 ? 1.0 : 0.0; };

  CompensatedSum head, lead_a, lag_a, lead_b, lag_b;
  std::size_t next = 0;
  for (std::size_t k = 0;; ++k) {
    if (idx[next] == k) {
      const double xk = x[k];
      const double window_a = lead_a.value() - lag_a.value();
      double tail = 0.0;
      switch (kind) {
        case EstimatorKind::I3:
          tail = positive_part(xk) * window_a + negative_part(xk) * (lead_b.value() - lag_b.value());
          break;
        case EstimatorKind::I4:
          tail = xk > 0.0 ? window_a : 0.0;
          break;
        default:
          tail = xk <= 0.0 ? window_a : 0.0;
          break;
      }
      out.push_back(scale * (head.value() + tail));
      if (++next == idx.size()) break;
    }
    lead_a.add(first_weight(x[k]));
    if (kind == EstimatorKind::I3) lead_b.add(second_weight(x[k]));
    if (k >= m) {
      const std::size_t i = k - m;
      head.add(pair_term(x[i], x[i + m]));
      lag_a.add(first_weight(x[i]));
      if (kind == EstimatorKind::I3) lag_b.add(second_weight(x[i]));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::J: return "J";
    case EstimatorKind::I1: return "I1";
    case EstimatorKind::I2: return "I2";
    case EstimatorKind::I3: return "I3";
    case EstimatorKind::I4: return "I4";
    case EstimatorKind::I5: return "I5";
    case EstimatorKind::R: return "R";
    case EstimatorKind::SmoothedQuarter: return "SmoothedQuarter";
    case EstimatorKind::QuadVar: return "QuadVar";
  }
  return "?";
}

EstimatorKind parse_estimator(std::string_view name) {
  for (auto kind : kAllKinds) {
    if (iequals(name, to_string(kind))) return kind;
  }
  throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

Curve j_epsilon(const Path& path, double eps, const TimeGrid& grid) {
  const auto [window, scale] = prepare(path, eps, grid, true);
  const auto x = path.values();
  const std::size_t m = window.steps;
  return make_curve(grid, accumulate(grid, scale, [&](std::size_t i) {
                      const double a = x[i], b = x[i + m];
                      const double jump = (b > 0.0 ? 1.0 : 0.0) - (a > 0.0 ? 1.0 : 0.0);
                      return jump * (b - a);
                    }),
                    eps, EstimatorKind::J);
}

Curve i_family(EstimatorKind kind, const Path& path, double eps, const TimeGrid& grid,
               Truncation truncation) {
  const auto x = path.values();
  switch (kind) {
    case EstimatorKind::I1:
    case EstimatorKind::I2: {
      const auto [window, scale] = prepare(path, eps, grid, true);
      const std::size_t m = window.steps;
      const bool forward_indicator = kind == EstimatorKind::I2;
      return make_curve(grid, accumulate(grid, scale, [&](std::size_t i) {
                          const double a = x[i], b = x[i + m];
                          const double pivot = forward_indicator ? b : a;
                          return pivot > 0.0 ? b - a : 0.0;
                        }),
                        eps, kind);
    }
    case EstimatorKind::I3:
    case EstimatorKind::I4:
    case EstimatorKind::I5: {
      const bool untruncated = truncation == Truncation::none;
      const auto [window, scale] = prepare(path, eps, grid, untruncated);
      const std::size_t m = window.steps;
      if (!untruncated) return make_curve(grid, truncated_sum(kind, path, m, grid, scale), eps, kind);
      return make_curve(grid, accumulate(grid, scale, [&](std::size_t i) {
                          const double a = x[i], b = x[i + m];
                          return kind == EstimatorKind::I3   ? i3_term(a, b)
                                 : kind == EstimatorKind::I4 ? i4_term(a, b)
                                                             : i5_term(a, b);
                        }),
                        eps, kind);
    }
    default:
      throw InvalidArgument("i_family accepts I1 .. I5 only, got " + std::string(to_string(kind)));
  }
}

Curve remainder(const Path& path, double eps, const TimeGrid& grid) {
  Curve r = j_epsilon(path, eps, grid);
  for (auto kind : {EstimatorKind::I3, EstimatorKind::I4, EstimatorKind::I5}) {
    const Curve part = i_family(kind, path, eps, grid);
    for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] -= part.values[k];
  }
  r.kind = EstimatorKind::R;
  return r;
}

Curve smoothed_quarter(const Path& path, double eps, const TimeGrid& grid) {
  const auto [window, scale] = prepare(path, eps, grid, false);
  const auto x = path.values();
  const double root = std::sqrt(window.seconds());
  return make_curve(grid, accumulate(grid, scale, [&](std::size_t i) {
                      const double a = x[i];
                      return a > 0.0 ? a * phi(-a / root) : 0.0;
                    }),
                    eps, EstimatorKind::SmoothedQuarter);
}

Curve quadratic_variation_reg(const Path& path, double eps, const TimeGrid& grid) {
  const auto [window, scale] = prepare(path, eps, grid, true);
  const auto x = path.values();
  const std::size_t m = window.steps;
  return make_curve(grid, accumulate(grid, scale, [&](std::size_t i) {
                      const double d = x[i + m] - x[i];
                      return d * d;
                    }),
                    eps, EstimatorKind::QuadVar);
}

Curve estimate(EstimatorKind kind, const Path& path, double eps, const TimeGrid& grid) {
  switch (kind) {
    case EstimatorKind::J: return j_epsilon(path, eps, grid);
    case EstimatorKind::R: return remainder(path, eps, grid);
    case EstimatorKind::SmoothedQuarter: return smoothed_quarter(path, eps, grid);
    case EstimatorKind::QuadVar: return quadratic_variation_reg(path, eps, grid);
    default: return i_family(kind, path, eps, grid);
  }
}

namespace {

// Index range [0, end] of the samples J_eps(t, .) reads.
std::pair<std::size_t, TimeGrid> sweep_grid(const Path& path, double eps, double t) {
  const auto m = Window::from_seconds(eps, path.dt()).steps;
  const auto k = to_steps(t, path.dt(), "t");
  const std::size_t end = k == 0 ? 0 : std::min(k - 1 + m, path.steps());
  return {end, TimeGrid::single(path.dt(), k)};
}

}  // namespace

SweepResult level_sweep(const Path& path, double eps, double t, const FunctionSpec& f,
                        std::span<const double> y_grid) {
  if (y_grid.size() < 2) throw InvalidArgument("level sweep needs at least two levels");
  for (std::size_t j = 1; j < y_grid.size(); ++j) {
    if (!(y_grid[j] > y_grid[j - 1])) throw InvalidArgument("y grid must be strictly increasing");
  }
  const auto [end, grid] = sweep_grid(path, eps, t);
  const auto x = path.values().subspan(0, end + 1);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const bool covered = y_grid.front() <= *lo && y_grid.back() >= *hi;

  std::vector<double> integrand(y_grid.size(), 0.0);
  for (std::size_t j = 0; j < y_grid.size(); ++j) {
    const double weight = f(y_grid[j]);
    if (weight == 0.0) continue;
    integrand[j] = weight * j_epsilon(shift_level(path, y_grid[j]), eps, grid).back();
  }
  CompensatedSum sum;
  for (std::size_t j = 1; j < y_grid.size(); ++j) {
    sum.add(0.5 * (y_grid[j] - y_grid[j - 1]) * (integrand[j] + integrand[j - 1]));
  }
  return {sum.value(), covered};
}

std::vector<double> covering_y_grid(const Path& path, double eps, double t, double step,
                                    double margin) {
  if (!(step > 0.0) || !(margin >= 0.0)) throw InvalidArgument("bad y grid parameters");
  const auto [end, grid] = sweep_grid(path, eps, t);
  const auto x = path.values().subspan(0, end + 1);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double start = std::floor((*lo - margin) / step) * step;
  std::vector<double> ys;
  for (std::size_t j = 0;; ++j) {
    const double y = start + static_cast<double>(j) * step;
    ys.push_back(y);
    if (y >= *hi + margin) break;
  }
  return ys;
}

}  // namespace ltlab
