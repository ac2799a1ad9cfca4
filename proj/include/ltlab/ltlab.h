/*
 * C interface to the local-time laboratory.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an ltl_status; on
 * failure ltl_last_error() describes the problem (per thread, valid until the
 * next failing call on that thread).
 */
#ifndef LTLAB_LTLAB_H
#define LTLAB_LTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LTL_API __declspec(dllexport)
#else
#define LTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ltl_status {
  LTL_OK = 0,
  LTL_E_INVALID_ARGUMENT = 1,
  LTL_E_ALIGNMENT = 2,
  LTL_E_RANGE = 3,
  LTL_E_VALIDATION = 4,
  LTL_E_IO = 5,
  LTL_E_INTERNAL = 6
} ltl_status;

typedef enum ltl_estimator {
  LTL_EST_J = 0,
  LTL_EST_I1,
  LTL_EST_I2,
  LTL_EST_I3,
  LTL_EST_I4,
  LTL_EST_I5,
  LTL_EST_R,
  LTL_EST_SMOOTHED_QUARTER,
  LTL_EST_QUAD_VAR
} ltl_estimator;

typedef enum ltl_oracle {
  LTL_ORACLE_TANAKA = 0,
  LTL_ORACLE_UPCROSSING,
  LTL_ORACLE_OCCUPATION,
  /* not a local time: sum of 1{X>0} dX */
  LTL_ORACLE_ITO_INDICATOR
} ltl_oracle;

typedef enum ltl_experiment {
  LTL_EXP_RATE = 0,
  LTL_EXP_FRACTIONS,
  LTL_EXP_IDENTITY,
  LTL_EXP_SWEEP
} ltl_experiment;

typedef enum ltl_sigma_formula { LTL_SIGMA_CONSTANT = 0, LTL_SIGMA_AFFINE_SINE } ltl_sigma_formula;

/* sigma(t) = c0 (constant) or c0 + c1 sin(frequency t) (affine_sine). */
typedef struct ltl_sigma_spec {
  ltl_sigma_formula formula;
  double c0, c1, frequency;
  double declared_gamma; /* in (1/4, 1] */
  double lower_bound_a;  /* > 0 */
} ltl_sigma_spec;

typedef enum ltl_function_kind {
  LTL_FN_CONSTANT = 0,
  LTL_FN_GAUSSIAN_BUMP,
  LTL_FN_TRIANGLE
} ltl_function_kind;

/* constant: value in `center`; gaussian_bump: (center, std dev);
 * triangle: (center, half width). */
typedef struct ltl_function_spec {
  ltl_function_kind kind;
  double center;
  double width;
} ltl_function_spec;

typedef struct ltl_rate_fit {
  double slope;
  double intercept;
  double r_squared;
} ltl_rate_fit;

typedef struct ltl_path ltl_path;
typedef struct ltl_curve ltl_curve;
typedef struct ltl_config ltl_config;
typedef struct ltl_report ltl_report;

LTL_API const char* ltl_last_error(void);
LTL_API const char* ltl_status_name(ltl_status status);
LTL_API const char* ltl_version(void);

/* ---- paths ------------------------------------------------------------ */

/* horizon_steps = 0 means the whole path. */
LTL_API ltl_status ltl_path_brownian(double dt, size_t n_steps, uint64_t seed, size_t horizon_steps,
                                     ltl_path** out);
LTL_API ltl_status ltl_path_from_values(double dt, const double* values, size_t n_values,
                                        size_t horizon_steps, ltl_path** out);
LTL_API ltl_status ltl_path_sigma_martingale(const ltl_path* driver, const ltl_sigma_spec* sigma,
                                             ltl_path** out);
LTL_API ltl_status ltl_path_shift_level(const ltl_path* path, double y, ltl_path** out);
LTL_API void ltl_path_free(ltl_path* path);

LTL_API size_t ltl_path_size(const ltl_path* path); /* number of samples, N + 1 */
LTL_API const double* ltl_path_values(const ltl_path* path);
LTL_API double ltl_path_dt(const ltl_path* path);
LTL_API double ltl_path_horizon(const ltl_path* path);
LTL_API double ltl_path_level_offset(const ltl_path* path);
LTL_API uint64_t ltl_path_seed(const ltl_path* path);

/* ---- estimators and oracles ------------------------------------------- */

/* times: n_times grid times in seconds, strictly increasing, multiples of dt. */
LTL_API ltl_status ltl_estimate(ltl_estimator kind, const ltl_path* path, double eps,
                                const double* times, size_t n_times, ltl_curve** out);
/* h is the strip width for the upcrossing and occupation oracles. */
LTL_API ltl_status ltl_oracle_curve(ltl_oracle kind, const ltl_path* path, double h,
                                    const double* times, size_t n_times, ltl_curve** out);
LTL_API ltl_status ltl_occupation_functional(const ltl_path* path, const ltl_function_spec* f,
                                             const double* times, size_t n_times, ltl_curve** out);
/* covered is set to 0 when the levels do not span the sampled range. */
LTL_API ltl_status ltl_level_sweep(const ltl_path* path, double eps, double t,
                                   const ltl_function_spec* f, const double* levels,
                                   size_t n_levels, double* value, int* covered);
LTL_API void ltl_curve_free(ltl_curve* curve);
LTL_API size_t ltl_curve_size(const ltl_curve* curve);
LTL_API const double* ltl_curve_values(const ltl_curve* curve);
/* Copies the grid times into `times` (capacity ltl_curve_size). */
LTL_API void ltl_curve_times(const ltl_curve* curve, double* times);

LTL_API double ltl_phi(double x);
LTL_API double ltl_quarter_integral(void);

/* ---- analysis ---------------------------------------------------------- */

LTL_API ltl_status ltl_sup_error(const ltl_curve* estimate, const ltl_curve* reference,
                                 double* out);
LTL_API ltl_status ltl_l2_ensemble_error(const double* errors, size_t n, double* l2,
                                         double* std_error);
LTL_API ltl_status ltl_fit_rate(const double* eps, const double* errors, size_t n,
                                ltl_rate_fit* out);
/* errors is row-major [n_eps x n_paths]. */
LTL_API ltl_status ltl_as_subsequence_check(const double* errors, size_t n_eps, size_t n_paths,
                                            const double* eps, double* fraction);

/* ---- experiments -------------------------------------------------------- */

LTL_API ltl_status ltl_config_new(ltl_config** out);
LTL_API void ltl_config_free(ltl_config* config);
/* Reads a `key = value` file; entries override current values. */
LTL_API ltl_status ltl_config_load(ltl_config* config, const char* path);
LTL_API ltl_status ltl_config_set(ltl_config* config, const char* key, const char* value);
LTL_API ltl_status ltl_config_validate(const ltl_config* config);
/* Hex digest of the result-relevant settings; owned by the config. */
LTL_API const char* ltl_config_hash(const ltl_config* config);

/* Runs and writes all artifacts into the configured output directory. */
LTL_API ltl_status ltl_run(ltl_experiment kind, const ltl_config* config, ltl_report** out);
LTL_API ltl_status ltl_experiment_from_name(const char* name, ltl_experiment* out);
LTL_API void ltl_report_free(ltl_report* report);
LTL_API int ltl_report_passed(const ltl_report* report);
LTL_API const char* ltl_report_summary_json(const ltl_report* report);
LTL_API size_t ltl_report_check_count(const ltl_report* report);
/* Any out pointer may be NULL. Strings are owned by the report. */
LTL_API ltl_status ltl_report_check(const ltl_report* report, size_t index, const char** name,
                                    int* passed, double* value, const char** bound);
LTL_API size_t ltl_report_diagnostic_count(const ltl_report* report);
LTL_API const char* ltl_report_diagnostic(const ltl_report* report, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* LTLAB_LTLAB_H */
