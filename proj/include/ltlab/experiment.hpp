#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/analysis.hpp"
#include "ltlab/config.hpp"

namespace ltlab {

/// Windows sorted by decreasing eps throughout; rows of per-path tables are
/// ordered by seed.

struct RateExperiment {
  std::vector<double> eps_values;
  std::vector<std::uint64_t> seeds;
  /// One report per (estimator, eps), estimator-major in config order.
  std::vector<EnsembleErrorReport> reports;
  std::map<EstimatorKind, RateReport> fits;
  std::map<EstimatorKind, std::string> fit_diagnostics;
  /// Fraction of paths with nonincreasing J errors along eps = 4^-n, when the
  /// configured windows contain at least three consecutive powers of 4.
  std::optional<double> subsequence_fraction;
  std::vector<double> subsequence_eps;
  /// Reported curves of the first path: (estimator, eps) -> (estimate, reference).
  struct SampleCurve {
    EstimatorKind estimator;
    double eps;
    std::vector<double> t, estimate, reference;
  };
  std::vector<SampleCurve> samples;

  const EnsembleErrorReport& report(EstimatorKind kind, double eps) const;
};

struct FractionRow {
  std::string ratio_kind;  // "I3/L", "I4/L", "I5/L", "SmoothedQuarter/L"
  double target;
  double eps;
  double mean;
  double std_error;
  std::size_t n_used;
  std::size_t n_excluded;
};

struct FractionsExperiment {
  std::vector<double> eps_values;
  std::vector<FractionRow> rows;  // eps-major
  double exclusion_threshold;

  const FractionRow& row(std::string_view ratio_kind, double eps) const;
};

struct IdentityRow {
  double eps;
  std::uint64_t seed;
  double violation_i1_i2;    // max_t |J - (-I1 + I2)| / scale
  double violation_i3_i5_r;  // max_t |J - (I3 + I4 + I5 + R)| / scale
  double sup_remainder;      // max_t |R|
};

struct IdentityExperiment {
  std::vector<double> eps_values;
  std::vector<IdentityRow> rows;  // eps-major, then seed
  double max_violation_i1_i2 = 0.0;
  double max_violation_i3_i5_r = 0.0;
  std::vector<double> mean_sup_remainder;  // per eps
};

struct SweepRow {
  double eps;
  std::uint64_t seed;
  double level_sweep;
  double occupation;
  double relative_error;
  bool covered;
};

struct SweepExperiment {
  std::vector<double> eps_values;
  std::vector<SweepRow> rows;  // eps-major
  std::vector<double> mean_relative_error;  // per eps
};

/// Relative mismatch |a - b| / scale used by the identity checks; 0 when
/// both sides vanish.
double relative_violation(double a, double b, double scale);

/// Fixed-order parallel map over path indices 0..n-1 on `threads` workers
/// (0: hardware concurrency). Results are placed by index.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Path of seed base_seed + index, level-shifted, with forward margin for the
/// largest window.
Path experiment_path(const ExperimentConfig& config, std::size_t index);

RateExperiment run_rate_experiment(const ExperimentConfig& config);
FractionsExperiment run_fractions_experiment(const ExperimentConfig& config);
IdentityExperiment run_identity_check(const ExperimentConfig& config);
SweepExperiment run_sweep_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Reports

enum class ExperimentKind { rate, fractions, identity, sweep };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

struct Check {
  std::string name;
  bool passed;
  double value;
  std::string bound;
};

struct Report {
  ExperimentKind kind;
  std::string config_hash;
  std::map<std::string, std::string> files;  // file name -> contents
  std::string summary_json;
  std::vector<Check> checks;
  std::vector<std::string> diagnostics;

  bool passed() const;
};

Report make_report(const ExperimentConfig& config, const RateExperiment& result);
Report make_report(const ExperimentConfig& config, const FractionsExperiment& result);
Report make_report(const ExperimentConfig& config, const IdentityExperiment& result);
Report make_report(const ExperimentConfig& config, const SweepExperiment& result);

/// Validates the config, checks that output_dir is writable, runs the
/// experiment, and writes every report file into output_dir.
Report run_experiment(ExperimentKind kind, const ExperimentConfig& config);

/// Creates the directory if needed; throws IoError when it is not writable.
void ensure_writable_directory(const std::string& dir);
void write_report(const Report& report, const std::string& dir);

}  // namespace ltlab
