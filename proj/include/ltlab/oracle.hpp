#pragma once

#include <string_view>

#include "ltlab/estimators.hpp"

namespace ltlab {

enum class OracleKind { tanaka, upcrossing, occupation };

std::string_view to_string(OracleKind kind);
OracleKind parse_oracle(std::string_view name);

/// sum_{i<k} 1{X_i>0} (X_{i+1} - X_i)
Curve ito_indicator_integral(const Path& path, const TimeGrid& grid);

/// 2 (X_k^+ - X_0^+ - sum_{i<k} 1{X_i>0} (X_{i+1} - X_i)). Reference oracle.
Curve tanaka_local_time(const Path& path, const TimeGrid& grid);

/// 2h times the number of completed upcrossings of [0, h] up to t_k. A
/// crossing is armed by a sample <= 0 and completed by a sample >= h.
Curve upcrossing_local_time(const Path& path, double h, const TimeGrid& grid);

/// (1/2h) sum_{i<k} 1{|X_i| <= h} dt
Curve occupation_local_time(const Path& path, double h, const TimeGrid& grid);

/// sum_{i<k} f(X_i) w_i dt, with w_i = d[X,X]/dt at t_i.
Curve occupation_functional(const Path& path, const FunctionSpec& f, const TimeGrid& grid);

/// Dispatches on kind; h is ignored by the Tanaka oracle.
Curve local_time(OracleKind kind, const Path& path, double h, const TimeGrid& grid);

}  // namespace ltlab
