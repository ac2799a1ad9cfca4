#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltlab/estimators.hpp"
#include "ltlab/numeric.hpp"
#include "ltlab/oracle.hpp"
#include "ltlab/paths.hpp"

namespace ltlab {

/// Parameters of one Monte Carlo experiment. dt = 2^-dt_exponent and each
/// window eps = 2^-k for k in eps_exponents. Path i uses seed base_seed + i.
struct ExperimentConfig {
  double horizon = 1.0;
  int dt_exponent = 20;
  std::vector<int> eps_exponents = {4, 5, 6, 7, 8, 9, 10, 11};
  std::size_t n_paths = 64;
  std::uint64_t base_seed = 1;
  double level_y = 0.0;
  PathKind generator = PathKind::brownian;
  std::optional<SigmaSpec> sigma;
  std::vector<EstimatorKind> estimators = {EstimatorKind::J};
  OracleKind oracle = OracleKind::tanaka;
  double oracle_h = 1.0 / 512.0;       // strip width of the upcrossing/occupation oracles
  std::size_t t_grid_stride = 0;       // 0: report every 2^-10 T
  bool allow_coarse_dt = false;
  FunctionSpec sweep_function = FunctionSpec::gaussian_bump(0.0, 0.5);
  double sweep_y_step = 1.0 / 64.0;
  double sweep_y_margin = 0.25;
  std::string output_dir = "out";
  unsigned threads = 0;                // 0: hardware concurrency

  double dt() const;
  std::size_t horizon_steps() const;
  /// Windows sorted by decreasing eps.
  std::vector<double> eps_values() const;
  std::size_t reporting_stride() const;
  /// Horizon plus the largest window.
  std::size_t path_steps() const;
};

/// Sets one `key = value` entry. Keys: T, dt_exp, eps_exps ("4..11" or
/// "4,6,8"), paths, seed, level, generator, sigma ("c0,c1,freq"),
/// estimator (comma list), oracle, h, stride, allow_coarse_dt, function,
/// y_step, y_margin, out, threads. Throws ValidationError on bad input.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat key-value text: one `key = value` per line, `#` starts a comment.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// Throws ValidationError if the config cannot be run.
void validate(const ExperimentConfig& config);

/// Canonical sorted `key = value` listing of everything that affects results
/// (output_dir and threads excluded).
std::string canonical_text(const ExperimentConfig& config);
/// 64-bit FNV-1a of canonical_text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace ltlab
