#include <cmath>
#include <concepts>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ltlab/error.hpp"
#include "ltlab/experiment.hpp"

namespace ltlab {

namespace {

using nlohmann::json;

// Acceptance thresholds, as evaluated by `--check`.
constexpr double kRateSlopeLow = 0.15;
constexpr double kRateSlopeHigh = 0.60;
constexpr double kRateMinR2 = 0.90;
constexpr double kLimitL2Max = 0.15;
constexpr double kSubsequenceMinFraction = 0.8;
constexpr double kFractionBandBrownian = 0.05;
constexpr double kFractionBandSigma = 0.07;
constexpr double kMaxExclusion = 0.25;
constexpr double kQuarterTolerance = 1e-8;
constexpr double kIdentityTolerance = 1e-9;
constexpr double kResidualDecay = 0.25;
constexpr double kSweepMaxRelative = 0.05;

class CsvWriter {
 public:
  CsvWriter(const std::string& hash, std::string_view header) {
    out_ << "# config_hash=" << hash << '\n' << header << '\n';
  }
  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(bool x) { return x ? "1" : "0"; }
  template <std::unsigned_integral Int>
  static std::string cell(Int x) {
    return std::to_string(x);
  }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const std::string& s) { return s; }

  std::ostringstream out_;
};

json config_echo(const ExperimentConfig& config) {
  json echo = json::object();
  std::istringstream in(canonical_text(config));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    echo[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return echo;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Report start_report(ExperimentKind kind, const ExperimentConfig& config) {
  Report r;
  r.kind = kind;
  r.config_hash = config_hash(config);
  return r;
}

void finish_summary(Report& r, const ExperimentConfig& config, json results) {
  json checks = json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = {{"passed", c.passed}, {"value", number_or_null(c.value)}, {"bound", c.bound}};
  }
  json summary = {{"config_hash", r.config_hash},
                  {"experiment", std::string(to_string(r.kind))},
                  {"config", config_echo(config)},
                  {"results", std::move(results)},
                  {"checks", std::move(checks)},
                  {"diagnostics", r.diagnostics},
                  {"passed", r.passed()}};
  r.summary_json = summary.dump(2) + "\n";
  r.files["summary.json"] = r.summary_json;
}

std::string interval(double lo, double hi) {
  return "[" + format_double(lo) + ", " + format_double(hi) + "]";
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::rate: return "rate";
    case ExperimentKind::fractions: return "fractions";
    case ExperimentKind::identity: return "identity";
    case ExperimentKind::sweep: return "sweep";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (auto kind : {ExperimentKind::rate, ExperimentKind::fractions, ExperimentKind::identity,
                    ExperimentKind::sweep}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

Report make_report(const ExperimentConfig& config, const RateExperiment& result) {
  Report r = start_report(ExperimentKind::rate, config);

  CsvWriter errors(r.config_hash, "estimator,eps,seed,sup_error");
  CsvWriter rate(r.config_hash, "estimator,eps,l2_error,std_error");
  for (const auto& rep : result.reports) {
    for (std::size_t p = 0; p < rep.n_paths; ++p) {
      errors.row(to_string(rep.estimator), rep.eps, result.seeds[p], rep.per_path_sup_error[p]);
    }
    rate.row(to_string(rep.estimator), rep.eps, rep.l2_estimate, rep.std_error);
  }
  CsvWriter curves(r.config_hash, "estimator,eps,t,estimate,reference");
  for (const auto& s : result.samples) {
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      curves.row(to_string(s.estimator), s.eps, s.t[k], s.estimate[k], s.reference[k]);
    }
  }
  r.files["errors.csv"] = errors.str();
  r.files["rate.csv"] = rate.str();
  r.files["curves.csv"] = curves.str();

  json fits = json::object();
  for (const auto& [kind, fit] : result.fits) {
    fits[std::string(to_string(kind))] = {{"slope", fit.slope},
                                          {"intercept", fit.intercept},
                                          {"r_squared", fit.r_squared},
                                          {"k_delta", std::exp(fit.intercept)},
                                          {"points", fit.eps_values.size()}};
  }
  for (const auto& [kind, why] : result.fit_diagnostics) {
    fits[std::string(to_string(kind))] = nullptr;
    r.diagnostics.push_back(why);
  }

  for (auto kind : config.estimators) {
    std::vector<double> l2s;
    for (double eps : result.eps_values) l2s.push_back(result.report(kind, eps).l2_estimate);
    const std::string name(to_string(kind));
    if (kind == EstimatorKind::J) {
      if (auto it = result.fits.find(kind); it != result.fits.end()) {
        const auto& fit = it->second;
        r.checks.push_back({"rate_slope[J]", fit.slope >= kRateSlopeLow && fit.slope <= kRateSlopeHigh,
                            fit.slope, interval(kRateSlopeLow, kRateSlopeHigh)});
        r.checks.push_back({"rate_r_squared[J]", fit.r_squared >= kRateMinR2, fit.r_squared,
                            ">= " + format_double(kRateMinR2)});
      }
      if (l2s.size() >= 2) {
        r.checks.push_back({"monotone_refinement[J]", nearly_nonincreasing(l2s), l2s.back(),
                            "nonincreasing, <= 1 violation of <= 1.5x"});
      }
    }
    if (kind == EstimatorKind::I1 || kind == EstimatorKind::I2) {
      r.checks.push_back({"limit_l2[" + name + "]", l2s.back() <= kLimitL2Max, l2s.back(),
                          "<= " + format_double(kLimitL2Max) + " at smallest eps"});
    }
  }
  if (result.subsequence_fraction) {
    r.checks.push_back({"subsequence_fraction[J]", *result.subsequence_fraction >= kSubsequenceMinFraction,
                        *result.subsequence_fraction, ">= " + format_double(kSubsequenceMinFraction)});
  }

  json results = {{"fits", fits}, {"eps", result.eps_values}};
  if (result.subsequence_fraction) {
    results["subsequence"] = {{"eps", result.subsequence_eps}, {"fraction", *result.subsequence_fraction}};
  }
  finish_summary(r, config, std::move(results));
  return r;
}

Report make_report(const ExperimentConfig& config, const FractionsExperiment& result) {
  Report r = start_report(ExperimentKind::fractions, config);
  const std::string generator = config.generator == PathKind::brownian ? "brownian" : "sigma_martingale";
  CsvWriter csv(r.config_hash, "generator,eps,ratio_kind,mean,std_error,n_used,n_excluded");
  json rows = json::array();
  for (const auto& row : result.rows) {
    csv.row(generator, row.eps, row.ratio_kind, row.mean, row.std_error, row.n_used, row.n_excluded);
    rows.push_back({{"eps", row.eps}, {"ratio_kind", row.ratio_kind}, {"mean", number_or_null(row.mean)},
                    {"target", row.target}});
  }
  r.files["fractions.csv"] = csv.str();

  const double band = config.generator == PathKind::brownian ? kFractionBandBrownian : kFractionBandSigma;
  const double smallest = result.eps_values.back();
  for (const auto& row : result.rows) {
    if (row.eps != smallest) continue;
    const bool ok = std::isfinite(row.mean) && std::fabs(row.mean - row.target) <= band;
    r.checks.push_back({"fraction[" + row.ratio_kind + "]", ok, row.mean,
                        interval(row.target - band, row.target + band)});
  }
  const auto& first = result.rows.front();
  const double excluded =
      static_cast<double>(first.n_excluded) / static_cast<double>(first.n_used + first.n_excluded);
  r.checks.push_back({"exclusion_fraction", excluded < kMaxExclusion, excluded,
                      "< " + format_double(kMaxExclusion)});
  const double quarter = quarter_integral();
  r.checks.push_back({"quarter_integral", std::fabs(quarter - 0.25) <= kQuarterTolerance, quarter,
                      "0.25 +- " + format_double(kQuarterTolerance)});
  if (excluded > 0.0) {
    r.diagnostics.push_back(std::to_string(first.n_excluded) + " of " +
                            std::to_string(first.n_used + first.n_excluded) +
                            " paths excluded from ratios (L(T) < " +
                            format_double(result.exclusion_threshold) + ")");
  }
  finish_summary(r, config,
                 {{"rows", rows}, {"exclusion_fraction", excluded},
                  {"exclusion_threshold", result.exclusion_threshold}, {"quarter_integral", quarter}});
  return r;
}

Report make_report(const ExperimentConfig& config, const IdentityExperiment& result) {
  Report r = start_report(ExperimentKind::identity, config);
  CsvWriter csv(r.config_hash, "eps,seed,violation_i1_i2,violation_i3_i5_r,sup_remainder");
  for (const auto& row : result.rows) {
    csv.row(row.eps, row.seed, row.violation_i1_i2, row.violation_i3_i5_r, row.sup_remainder);
  }
  r.files["identity.csv"] = csv.str();

  r.checks.push_back({"identity[J=-I1+I2]", result.max_violation_i1_i2 <= kIdentityTolerance,
                      result.max_violation_i1_i2, "<= " + format_double(kIdentityTolerance)});
  r.checks.push_back({"identity[J=I3+I4+I5+R]", result.max_violation_i3_i5_r <= kIdentityTolerance,
                      result.max_violation_i3_i5_r, "<= " + format_double(kIdentityTolerance)});
  const auto& sups = result.mean_sup_remainder;
  if (sups.size() >= 2) {
    r.checks.push_back({"residual_monotone", nearly_nonincreasing(sups), sups.back(),
                        "nonincreasing, <= 1 violation of <= 1.5x"});
    const double ratio = sups.back() / sups.front();
    r.checks.push_back({"residual_decay", ratio <= kResidualDecay, ratio,
                        "<= " + format_double(kResidualDecay)});
  }
  finish_summary(r, config,
                 {{"max_violation_i1_i2", result.max_violation_i1_i2},
                  {"max_violation_i3_i5_r", result.max_violation_i3_i5_r},
                  {"eps", result.eps_values},
                  {"mean_sup_remainder", result.mean_sup_remainder}});
  return r;
}

Report make_report(const ExperimentConfig& config, const SweepExperiment& result) {
  Report r = start_report(ExperimentKind::sweep, config);
  CsvWriter csv(r.config_hash, "eps,seed,level_sweep,occupation,relative_error,covered");
  std::size_t uncovered = 0;
  for (const auto& row : result.rows) {
    csv.row(row.eps, row.seed, row.level_sweep, row.occupation, row.relative_error, row.covered);
    if (!row.covered) ++uncovered;
  }
  r.files["sweep.csv"] = csv.str();
  if (uncovered > 0) {
    r.diagnostics.push_back(std::to_string(uncovered) + " sweeps used a y grid not covering the path range");
  }
  const double smallest = result.mean_relative_error.back();
  r.checks.push_back({"sweep_relative_error", smallest <= kSweepMaxRelative, smallest,
                      "<= " + format_double(kSweepMaxRelative) + " at smallest eps"});
  finish_summary(r, config,
                 {{"eps", result.eps_values}, {"mean_relative_error", result.mean_relative_error},
                  {"function", config.sweep_function.to_string()}});
  return r;
}

void ensure_writable_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".ltlab_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_report(const Report& report, const std::string& dir) {
  ensure_writable_directory(dir);
  for (const auto& [name, contents] : report.files) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) throw IoError("failed to write '" + path.string() + "'");
  }
}

Report run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
  validate(config);
  ensure_writable_directory(config.output_dir);
  Report report;
  switch (kind) {
    case ExperimentKind::rate: report = make_report(config, run_rate_experiment(config)); break;
    case ExperimentKind::fractions: report = make_report(config, run_fractions_experiment(config)); break;
    case ExperimentKind::identity: report = make_report(config, run_identity_check(config)); break;
    case ExperimentKind::sweep: report = make_report(config, run_sweep_experiment(config)); break;
  }
  write_report(report, config.output_dir);
  return report;
}

}  // namespace ltlab
