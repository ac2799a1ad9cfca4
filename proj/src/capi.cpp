#include "ltlab/ltlab.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "ltlab/analysis.hpp"
#include "ltlab/error.hpp"
#include "ltlab/experiment.hpp"
#include "ltlab/oracle.hpp"

struct ltl_path {
  ltlab::Path path;
};
struct ltl_curve {
  ltlab::Curve curve;
};
struct ltl_config {
  ltlab::ExperimentConfig config;
  mutable std::string hash;
};
struct ltl_report {
  ltlab::Report report;
};

namespace {

thread_local std::string last_error;

ltl_status fail(ltl_status status, const char* what) {
  last_error = what;
  return status;
}

// Maps exceptions from the C++ core onto status codes.
template <class Body>
ltl_status guarded(Body&& body) noexcept {
  try {
    body();
    return LTL_OK;
  } catch (const ltlab::AlignmentError& e) {
    return fail(LTL_E_ALIGNMENT, e.what());
  } catch (const ltlab::RangeError& e) {
    return fail(LTL_E_RANGE, e.what());
  } catch (const ltlab::ValidationError& e) {
    return fail(LTL_E_VALIDATION, e.what());
  } catch (const ltlab::IoError& e) {
    return fail(LTL_E_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LTL_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LTL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LTL_E_INTERNAL, e.what());
  } catch (...) {
    return fail(LTL_E_INTERNAL, "unknown error");
  }
}

template <class T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw ltlab::InvalidArgument(std::string(name) + " must not be null");
}

ltlab::EstimatorKind to_kind(ltl_estimator kind) {
  switch (kind) {
    case LTL_EST_J: return ltlab::EstimatorKind::J;
    case LTL_EST_I1: return ltlab::EstimatorKind::I1;
    case LTL_EST_I2: return ltlab::EstimatorKind::I2;
    case LTL_EST_I3: return ltlab::EstimatorKind::I3;
    case LTL_EST_I4: return ltlab::EstimatorKind::I4;
    case LTL_EST_I5: return ltlab::EstimatorKind::I5;
    case LTL_EST_R: return ltlab::EstimatorKind::R;
    case LTL_EST_SMOOTHED_QUARTER: return ltlab::EstimatorKind::SmoothedQuarter;
    case LTL_EST_QUAD_VAR: return ltlab::EstimatorKind::QuadVar;
  }
  throw ltlab::InvalidArgument("unknown estimator kind");
}

ltlab::FunctionSpec to_function(const ltl_function_spec& f) {
  switch (f.kind) {
    case LTL_FN_CONSTANT: return ltlab::FunctionSpec::constant(f.center);
    case LTL_FN_GAUSSIAN_BUMP: return ltlab::FunctionSpec::gaussian_bump(f.center, f.width);
    case LTL_FN_TRIANGLE: return ltlab::FunctionSpec::triangle(f.center, f.width);
  }
  throw ltlab::InvalidArgument("unknown function kind");
}

ltlab::TimeGrid to_grid(const ltl_path* path, const double* times, size_t n_times) {
  require(path, "path");
  if (n_times > 0) require(times, "times");
  return ltlab::TimeGrid::from_seconds(path->path.dt(), {times, n_times});
}

std::optional<std::size_t> horizon_arg(size_t horizon_steps) {
  if (horizon_steps == 0) return std::nullopt;
  return horizon_steps;
}

}  // namespace

extern "C" {

const char* ltl_last_error(void) { return last_error.c_str(); }

const char* ltl_status_name(ltl_status status) {
  switch (status) {
    case LTL_OK: return "ok";
    case LTL_E_INVALID_ARGUMENT: return "invalid argument";
    case LTL_E_ALIGNMENT: return "alignment error";
    case LTL_E_RANGE: return "range error";
    case LTL_E_VALIDATION: return "validation error";
    case LTL_E_IO: return "I/O error";
    case LTL_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ltl_version(void) { return "1.0.0"; }

ltl_status ltl_path_brownian(double dt, size_t n_steps, uint64_t seed, size_t horizon_steps,
                             ltl_path** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ltl_path{ltlab::generate_brownian(dt, n_steps, seed, horizon_arg(horizon_steps))};
  });
}

ltl_status ltl_path_from_values(double dt, const double* values, size_t n_values,
                                size_t horizon_steps, ltl_path** out) {
  return guarded([&] {
    require(out, "out");
    require(values, "values");
    *out = new ltl_path{ltlab::Path::from_values(dt, {values, values + n_values},
                                                 horizon_arg(horizon_steps))};
  });
}

ltl_status ltl_path_sigma_martingale(const ltl_path* driver, const ltl_sigma_spec* sigma,
                                     ltl_path** out) {
  return guarded([&] {
    require(driver, "driver");
    require(sigma, "sigma");
    require(out, "out");
    const auto formula = sigma->formula == LTL_SIGMA_CONSTANT ? ltlab::SigmaSpec::Formula::constant
                                                              : ltlab::SigmaSpec::Formula::affine_sine;
    const ltlab::SigmaSpec spec(formula, sigma->c0, sigma->c1, sigma->frequency,
                                sigma->declared_gamma, sigma->lower_bound_a);
    *out = new ltl_path{ltlab::generate_sigma_martingale(driver->path, spec)};
  });
}

ltl_status ltl_path_shift_level(const ltl_path* path, double y, ltl_path** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ltl_path{ltlab::shift_level(path->path, y)};
  });
}

void ltl_path_free(ltl_path* path) { delete path; }
size_t ltl_path_size(const ltl_path* path) { return path ? path->path.values().size() : 0; }
const double* ltl_path_values(const ltl_path* path) {
  return path ? path->path.values().data() : nullptr;
}
double ltl_path_dt(const ltl_path* path) { return path ? path->path.dt() : 0.0; }
double ltl_path_horizon(const ltl_path* path) { return path ? path->path.horizon() : 0.0; }
double ltl_path_level_offset(const ltl_path* path) {
  return path ? path->path.level_offset() : 0.0;
}
uint64_t ltl_path_seed(const ltl_path* path) { return path ? path->path.seed() : 0; }

ltl_status ltl_estimate(ltl_estimator kind, const ltl_path* path, double eps, const double* times,
                        size_t n_times, ltl_curve** out) {
  return guarded([&] {
    require(out, "out");
    const auto grid = to_grid(path, times, n_times);
    *out = new ltl_curve{ltlab::estimate(to_kind(kind), path->path, eps, grid)};
  });
}

ltl_status ltl_oracle_curve(ltl_oracle kind, const ltl_path* path, double h, const double* times,
                            size_t n_times, ltl_curve** out) {
  return guarded([&] {
    require(out, "out");
    const auto grid = to_grid(path, times, n_times);
    switch (kind) {
      case LTL_ORACLE_TANAKA:
        *out = new ltl_curve{ltlab::tanaka_local_time(path->path, grid)};
        return;
      case LTL_ORACLE_UPCROSSING:
        *out = new ltl_curve{ltlab::upcrossing_local_time(path->path, h, grid)};
        return;
      case LTL_ORACLE_OCCUPATION:
        *out = new ltl_curve{ltlab::occupation_local_time(path->path, h, grid)};
        return;
      case LTL_ORACLE_ITO_INDICATOR:
        *out = new ltl_curve{ltlab::ito_indicator_integral(path->path, grid)};
        return;
    }
    throw ltlab::InvalidArgument("unknown oracle kind");
  });
}

ltl_status ltl_occupation_functional(const ltl_path* path, const ltl_function_spec* f,
                                     const double* times, size_t n_times, ltl_curve** out) {
  return guarded([&] {
    require(out, "out");
    require(f, "f");
    const auto grid = to_grid(path, times, n_times);
    *out = new ltl_curve{ltlab::occupation_functional(path->path, to_function(*f), grid)};
  });
}

ltl_status ltl_level_sweep(const ltl_path* path, double eps, double t, const ltl_function_spec* f,
                           const double* levels, size_t n_levels, double* value, int* covered) {
  return guarded([&] {
    require(path, "path");
    require(f, "f");
    require(levels, "levels");
    require(value, "value");
    const auto result = ltlab::level_sweep(path->path, eps, t, to_function(*f), {levels, n_levels});
    *value = result.value;
    if (covered) *covered = result.covered ? 1 : 0;
  });
}

void ltl_curve_free(ltl_curve* curve) { delete curve; }
size_t ltl_curve_size(const ltl_curve* curve) { return curve ? curve->curve.size() : 0; }
const double* ltl_curve_values(const ltl_curve* curve) {
  return curve ? curve->curve.values.data() : nullptr;
}
void ltl_curve_times(const ltl_curve* curve, double* times) {
  if (!curve || !times) return;
  for (std::size_t k = 0; k < curve->curve.grid.size(); ++k) times[k] = curve->curve.grid.seconds(k);
}

double ltl_phi(double x) { return ltlab::phi(x); }
double ltl_quarter_integral(void) { return ltlab::quarter_integral(); }

ltl_status ltl_sup_error(const ltl_curve* estimate, const ltl_curve* reference, double* out) {
  return guarded([&] {
    require(estimate, "estimate");
    require(reference, "reference");
    require(out, "out");
    *out = ltlab::sup_error(estimate->curve, reference->curve);
  });
}

ltl_status ltl_l2_ensemble_error(const double* errors, size_t n, double* l2, double* std_error) {
  return guarded([&] {
    if (n > 0) require(errors, "errors");
    const auto r = ltlab::l2_ensemble_error({errors, n});
    if (l2) *l2 = r.l2_estimate;
    if (std_error) *std_error = r.std_error;
  });
}

ltl_status ltl_fit_rate(const double* eps, const double* errors, size_t n, ltl_rate_fit* out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) {
      require(eps, "eps");
      require(errors, "errors");
    }
    const auto r = ltlab::fit_rate({eps, n}, {errors, n});
    *out = {r.slope, r.intercept, r.r_squared};
  });
}

ltl_status ltl_as_subsequence_check(const double* errors, size_t n_eps, size_t n_paths,
                                    const double* eps, double* fraction) {
  return guarded([&] {
    require(errors, "errors");
    require(eps, "eps");
    require(fraction, "fraction");
    *fraction = ltlab::as_subsequence_check({errors, n_eps * n_paths}, n_eps, n_paths, {eps, n_eps});
  });
}

ltl_status ltl_config_new(ltl_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ltl_config{};
  });
}

void ltl_config_free(ltl_config* config) { delete config; }

ltl_status ltl_config_load(ltl_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->config = ltlab::load_config_file(path, config->config);
  });
}

ltl_status ltl_config_set(ltl_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    ltlab::apply_setting(config->config, key, value);
  });
}

ltl_status ltl_config_validate(const ltl_config* config) {
  return guarded([&] {
    require(config, "config");
    ltlab::validate(config->config);
  });
}

const char* ltl_config_hash(const ltl_config* config) {
  if (!config) return "";
  config->hash = ltlab::config_hash(config->config);
  return config->hash.c_str();
}

ltl_status ltl_experiment_from_name(const char* name, ltl_experiment* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (ltlab::parse_experiment(name)) {
      case ltlab::ExperimentKind::rate: *out = LTL_EXP_RATE; break;
      case ltlab::ExperimentKind::fractions: *out = LTL_EXP_FRACTIONS; break;
      case ltlab::ExperimentKind::identity: *out = LTL_EXP_IDENTITY; break;
      case ltlab::ExperimentKind::sweep: *out = LTL_EXP_SWEEP; break;
    }
  });
}

ltl_status ltl_run(ltl_experiment kind, const ltl_config* config, ltl_report** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    ltlab::ExperimentKind k{};
    switch (kind) {
      case LTL_EXP_RATE: k = ltlab::ExperimentKind::rate; break;
      case LTL_EXP_FRACTIONS: k = ltlab::ExperimentKind::fractions; break;
      case LTL_EXP_IDENTITY: k = ltlab::ExperimentKind::identity; break;
      case LTL_EXP_SWEEP: k = ltlab::ExperimentKind::sweep; break;
      default: throw ltlab::InvalidArgument("unknown experiment kind");
    }
    *out = new ltl_report{ltlab::run_experiment(k, config->config)};
  });
}

void ltl_report_free(ltl_report* report) { delete report; }
int ltl_report_passed(const ltl_report* report) {
  return report && report->report.passed() ? 1 : 0;
}
const char* ltl_report_summary_json(const ltl_report* report) {
  return report ? report->report.summary_json.c_str() : "";
}
size_t ltl_report_check_count(const ltl_report* report) {
  return report ? report->report.checks.size() : 0;
}

ltl_status ltl_report_check(const ltl_report* report, size_t index, const char** name, int* passed,
                            double* value, const char** bound) {
  return guarded([&] {
    require(report, "report");
    if (index >= report->report.checks.size()) throw ltlab::InvalidArgument("check index out of range");
    const auto& c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (value) *value = c.value;
    if (bound) *bound = c.bound.c_str();
  });
}

size_t ltl_report_diagnostic_count(const ltl_report* report) {
  return report ? report->report.diagnostics.size() : 0;
}
const char* ltl_report_diagnostic(const ltl_report* report, size_t index) {
  if (!report || index >= report->report.diagnostics.size()) return "";
  return report->report.diagnostics[index].c_str();
}

}  // extern "C"
