#include "ltlab/oracle.hpp"

#include <cmath>
#include <string>

#include "ltlab/error.hpp"

namespace ltlab {

namespace {

void check_grid(const Path& path, const TimeGrid& grid) {
  if (std::fabs(grid.dt() - path.dt()) > 1e-12 * path.dt()) {
    throw AlignmentError("time grid step differs from the path step");
  }
  if (!grid.empty() && grid.back() > path.steps()) {
    throw RangeError("time grid extends past the end of the path");
  }
}

void check_width(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("strip width h must be positive");
}

template <class Term>
Curve running_sum(const TimeGrid& grid, double scale, Term term) {
  Curve c{grid, {}, 0.0, std::nullopt};
  c.values.reserve(grid.size());
  CompensatedSum sum;
  std::size_t i = 0;
  for (std::size_t k : grid.indices()) {
    for (; i < k; ++i) sum.add(term(i));
    c.values.push_back(scale * sum.value());
  }
  return c;
}

}  // namespace

std::string_view to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::tanaka: return "tanaka";
    case OracleKind::upcrossing: return "upcrossing";
    case OracleKind::occupation: return "occupation";
  }
  return "?";
}

OracleKind parse_oracle(std::string_view name) {
  for (auto kind : {OracleKind::tanaka, OracleKind::upcrossing, OracleKind::occupation}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown oracle '" + std::string(name) + "'");
}

Curve ito_indicator_integral(const Path& path, const TimeGrid& grid) {
  check_grid(path, grid);
  const auto x = path.values();
  return running_sum(grid, 1.0, [&](std::size_t i) { return x[i] > 0.0 ? x[i + 1] - x[i] : 0.0; });
}

Curve tanaka_local_time(const Path& path, const TimeGrid& grid) {
  Curve c = ito_indicator_integral(path, grid);
  const auto x = path.values();
  const double start = positive_part(x[0]);
  const auto idx = grid.indices();
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    c.values[k] = 2.0 * (positive_part(x[idx[k]]) - start - c.values[k]);
  }
  return c;
}

Curve upcrossing_local_time(const Path& path, double h, const TimeGrid& grid) {
  check_width(h);
  check_grid(path, grid);
  const auto x = path.values();
  Curve c{grid, {}, 0.0, std::nullopt};
  c.values.reserve(grid.size());
  bool armed = false;
  std::size_t count = 0;
  std::size_t i = 0;
  for (std::size_t k : grid.indices()) {
    for (; i <= k; ++i) {
      if (x[i] <= 0.0) {
        armed = true;
      } else if (armed && x[i] >= h) {
        armed = false;
        ++count;
      }
    }
    c.values.push_back(2.0 * h * static_cast<double>(count));
  }
  return c;
}

Curve occupation_local_time(const Path& path, double h, const TimeGrid& grid) {
  check_width(h);
  check_grid(path, grid);
  const auto x = path.values();
  return running_sum(grid, path.dt() / (2.0 * h),
                     [&](std::size_t i) { return std::fabs(x[i]) <= h ? 1.0 : 0.0; });
}

Curve occupation_functional(const Path& path, const FunctionSpec& f, const TimeGrid& grid) {
  check_grid(path, grid);
  const auto x = path.values();
  return running_sum(grid, path.dt(), [&](std::size_t i) { return f(x[i]) * path.qv_density(i); });
}

Curve local_time(OracleKind kind, const Path& path, double h, const TimeGrid& grid) {
  switch (kind) {
    case OracleKind::tanaka: return tanaka_local_time(path, grid);
    case OracleKind::upcrossing: return upcrossing_local_time(path, h, grid);
    case OracleKind::occupation: return occupation_local_time(path, h, grid);
  }
  throw InvalidArgument("unknown oracle");
}

}  // namespace ltlab
