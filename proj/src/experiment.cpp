#include "ltlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ltlab/error.hpp"
#include "ltlab/oracle.hpp"

namespace ltlab {

namespace {

constexpr double kExclusionThreshold = 0.1;

struct Target {
  const char* name;
  EstimatorKind kind;
  double fraction;
};

constexpr Target kFractionTargets[] = {
    {"I3/L", EstimatorKind::I3, 0.5},
    {"I4/L", EstimatorKind::I4, 0.25},
    {"I5/L", EstimatorKind::I5, 0.25},
    {"SmoothedQuarter/L", EstimatorKind::SmoothedQuarter, 0.25},
};

// Limit object of each estimator, on the same grid.
struct References {
  const Path& path;
  const TimeGrid& grid;
  Curve local_time;
  std::optional<Curve> ito;
  std::optional<Curve> quad_var;

  Curve scaled_local_time(double factor) const {
    Curve c = local_time;
    for (double& v : c.values) v *= factor;
    return c;
  }

  Curve for_estimator(EstimatorKind kind) {
    switch (kind) {
      case EstimatorKind::J: return local_time;
      case EstimatorKind::I1:
        if (!ito) ito = ito_indicator_integral(path, grid);
        return *ito;
      case EstimatorKind::I2: {
        Curve c = scaled_local_time(0.5);
        const auto idx = grid.indices();
        for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] += positive_part(path[idx[k]]);
        return c;
      }
      case EstimatorKind::I3: return scaled_local_time(0.5);
      case EstimatorKind::I4:
      case EstimatorKind::I5:
      case EstimatorKind::SmoothedQuarter: return scaled_local_time(0.25);
      case EstimatorKind::R: return scaled_local_time(0.0);
      case EstimatorKind::QuadVar:
        if (!quad_var) quad_var = occupation_functional(path, FunctionSpec::constant(1.0), grid);
        return *quad_var;
    }
    throw InvalidArgument("unknown estimator");
  }
};

double mean(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double standard_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  CompensatedSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(xs.size() - 1)) /
         std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace

double relative_violation(double a, double b, double scale) {
  const double diff = std::fabs(a - b);
  if (diff == 0.0) return 0.0;
  return scale > 0.0 ? diff / scale : diff;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Path experiment_path(const ExperimentConfig& config, std::size_t index) {
  const std::uint64_t seed = config.base_seed + index;
  Path path = generate_brownian(config.dt(), config.path_steps(), seed, config.horizon_steps());
  if (config.generator == PathKind::sigma_martingale) {
    path = generate_sigma_martingale(path, *config.sigma);
  }
  return shift_level(path, config.level_y);
}

const EnsembleErrorReport& RateExperiment::report(EstimatorKind kind, double eps) const {
  for (const auto& r : reports) {
    if (r.estimator == kind && r.eps == eps) return r;
  }
  throw InvalidArgument("no report for this estimator and eps");
}

const FractionRow& FractionsExperiment::row(std::string_view ratio_kind, double eps) const {
  for (const auto& r : rows) {
    if (r.ratio_kind == ratio_kind && r.eps == eps) return r;
  }
  throw InvalidArgument("no fraction row for this ratio and eps");
}

RateExperiment run_rate_experiment(const ExperimentConfig& config) {
  validate(config);
  RateExperiment out;
  out.eps_values = config.eps_values();
  const auto& kinds = config.estimators;
  const std::size_t n_eps = out.eps_values.size();
  const std::size_t n_paths = config.n_paths;
  const TimeGrid full = TimeGrid::strided(config.dt(), config.horizon_steps());
  const std::size_t stride = config.reporting_stride();

  // errors[(estimator * n_eps + eps) * n_paths + path]
  std::vector<double> errors(kinds.size() * n_eps * n_paths);
  parallel_for(n_paths, config.threads, [&](std::size_t p) {
    const Path path = experiment_path(config, p);
    References refs{path, full, local_time(config.oracle, path, config.oracle_h, full), {}, {}};
    for (std::size_t e = 0; e < kinds.size(); ++e) {
      const Curve reference = refs.for_estimator(kinds[e]);
      for (std::size_t j = 0; j < n_eps; ++j) {
        const Curve curve = estimate(kinds[e], path, out.eps_values[j], full);
        errors[(e * n_eps + j) * n_paths + p] = sup_error(curve, reference);
        if (p == 0) {
          RateExperiment::SampleCurve sample{kinds[e], out.eps_values[j], {}, {}, {}};
          for (std::size_t k = 0; k < curve.size(); k += stride) {
            sample.t.push_back(full.seconds(k));
            sample.estimate.push_back(curve.values[k]);
            sample.reference.push_back(reference.values[k]);
          }
          if ((curve.size() - 1) % stride != 0) {
            sample.t.push_back(full.seconds(curve.size() - 1));
            sample.estimate.push_back(curve.back());
            sample.reference.push_back(reference.back());
          }
          out.samples.push_back(std::move(sample));
        }
      }
    }
  });

  for (std::size_t p = 0; p < n_paths; ++p) out.seeds.push_back(config.base_seed + p);
  for (std::size_t e = 0; e < kinds.size(); ++e) {
    std::vector<double> l2s;
    for (std::size_t j = 0; j < n_eps; ++j) {
      const auto first = errors.begin() + static_cast<std::ptrdiff_t>((e * n_eps + j) * n_paths);
      out.reports.push_back(make_ensemble_report(kinds[e], out.eps_values[j],
                                                 {first, first + static_cast<std::ptrdiff_t>(n_paths)}));
      l2s.push_back(out.reports.back().l2_estimate);
    }
    try {
      out.fits.emplace(kinds[e], fit_rate(out.eps_values, l2s));
    } catch (const InvalidArgument& err) {
      out.fit_diagnostics.emplace(kinds[e], std::string("rate fit refused for ") +
                                                std::string(to_string(kinds[e])) + ": " + err.what());
    }
  }

  // Longest run of consecutive powers of 4 among the windows.
  const auto j_pos = std::find(kinds.begin(), kinds.end(), EstimatorKind::J);
  if (j_pos != kinds.end()) {
    const auto e = static_cast<std::size_t>(j_pos - kinds.begin());
    std::vector<std::size_t> best, run;
    for (std::size_t j = 0; j < n_eps; ++j) {
      const double n = -std::log2(out.eps_values[j]) / 2.0;
      if (std::fabs(n - std::nearbyint(n)) > 1e-12) continue;
      if (!run.empty() && out.eps_values[run.back()] != 4.0 * out.eps_values[j]) run.clear();
      run.push_back(j);
      if (run.size() > best.size()) best = run;
    }
    if (best.size() >= 3) {
      std::vector<double> matrix;
      for (std::size_t j : best) {
        out.subsequence_eps.push_back(out.eps_values[j]);
        const auto first = errors.begin() + static_cast<std::ptrdiff_t>((e * n_eps + j) * n_paths);
        matrix.insert(matrix.end(), first, first + static_cast<std::ptrdiff_t>(n_paths));
      }
      out.subsequence_fraction =
          as_subsequence_check(matrix, best.size(), n_paths, out.subsequence_eps);
    }
  }
  return out;
}

FractionsExperiment run_fractions_experiment(const ExperimentConfig& config) {
  validate(config);
  FractionsExperiment out;
  out.eps_values = config.eps_values();
  out.exclusion_threshold = kExclusionThreshold;
  const std::size_t n_eps = out.eps_values.size();
  const std::size_t n_paths = config.n_paths;
  constexpr std::size_t n_targets = std::size(kFractionTargets);
  const TimeGrid at_end = TimeGrid::single(config.dt(), config.horizon_steps());

  std::vector<double> local_times(n_paths);
  // values[(eps * n_targets + target) * n_paths + path]
  std::vector<double> values(n_eps * n_targets * n_paths);
  parallel_for(n_paths, config.threads, [&](std::size_t p) {
    const Path path = experiment_path(config, p);
    local_times[p] = local_time(config.oracle, path, config.oracle_h, at_end).back();
    for (std::size_t j = 0; j < n_eps; ++j) {
      for (std::size_t t = 0; t < n_targets; ++t) {
        values[(j * n_targets + t) * n_paths + p] =
            estimate(kFractionTargets[t].kind, path, out.eps_values[j], at_end).back();
      }
    }
  });

  for (std::size_t j = 0; j < n_eps; ++j) {
    for (std::size_t t = 0; t < n_targets; ++t) {
      std::vector<double> ratios;
      for (std::size_t p = 0; p < n_paths; ++p) {
        if (local_times[p] < kExclusionThreshold) continue;
        ratios.push_back(values[(j * n_targets + t) * n_paths + p] / local_times[p]);
      }
      FractionRow row{kFractionTargets[t].name, kFractionTargets[t].fraction, out.eps_values[j],
                      std::nan(""), std::nan(""), ratios.size(), n_paths - ratios.size()};
      if (!ratios.empty()) {
        row.mean = mean(ratios);
        row.std_error = standard_error(ratios);
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

IdentityExperiment run_identity_check(const ExperimentConfig& config) {
  validate(config);
  IdentityExperiment out;
  out.eps_values = config.eps_values();
  const std::size_t n_eps = out.eps_values.size();
  const std::size_t n_paths = config.n_paths;
  const TimeGrid full = TimeGrid::strided(config.dt(), config.horizon_steps());
  out.rows.resize(n_eps * n_paths);

  parallel_for(n_paths, config.threads, [&](std::size_t p) {
    const Path path = experiment_path(config, p);
    for (std::size_t j = 0; j < n_eps; ++j) {
      const double eps = out.eps_values[j];
      const Curve jc = j_epsilon(path, eps, full);
      const Curve i1 = i_family(EstimatorKind::I1, path, eps, full);
      const Curve i2 = i_family(EstimatorKind::I2, path, eps, full);
      const Curve i3 = i_family(EstimatorKind::I3, path, eps, full);
      const Curve i4 = i_family(EstimatorKind::I4, path, eps, full);
      const Curve i5 = i_family(EstimatorKind::I5, path, eps, full);
      const Curve r = remainder(path, eps, full);
      IdentityRow row{eps, config.base_seed + p, 0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < full.size(); ++k) {
        const double jv = jc.values[k];
        const double split2 = -i1.values[k] + i2.values[k];
        const double split4 = i3.values[k] + i4.values[k] + i5.values[k] + r.values[k];
        const double scale2 = std::max(std::fabs(jv), std::fabs(i1.values[k]) + std::fabs(i2.values[k]));
        const double scale4 = std::max(std::fabs(jv), i3.values[k] + i4.values[k] + i5.values[k] +
                                                          std::fabs(r.values[k]));
        row.violation_i1_i2 = std::max(row.violation_i1_i2, relative_violation(jv, split2, scale2));
        row.violation_i3_i5_r = std::max(row.violation_i3_i5_r, relative_violation(jv, split4, scale4));
        row.sup_remainder = std::max(row.sup_remainder, std::fabs(r.values[k]));
      }
      out.rows[j * n_paths + p] = row;
    }
  });

  for (std::size_t j = 0; j < n_eps; ++j) {
    std::vector<double> sups;
    for (std::size_t p = 0; p < n_paths; ++p) {
      const auto& row = out.rows[j * n_paths + p];
      out.max_violation_i1_i2 = std::max(out.max_violation_i1_i2, row.violation_i1_i2);
      out.max_violation_i3_i5_r = std::max(out.max_violation_i3_i5_r, row.violation_i3_i5_r);
      sups.push_back(row.sup_remainder);
    }
    out.mean_sup_remainder.push_back(mean(sups));
  }
  return out;
}

SweepExperiment run_sweep_experiment(const ExperimentConfig& config) {
  validate(config);
  SweepExperiment out;
  out.eps_values = config.eps_values();
  const std::size_t n_eps = out.eps_values.size();
  const std::size_t n_paths = config.n_paths;
  const double t = config.horizon;
  const TimeGrid at_end = TimeGrid::single(config.dt(), config.horizon_steps());
  out.rows.resize(n_eps * n_paths);

  parallel_for(n_paths, config.threads, [&](std::size_t p) {
    const Path path = experiment_path(config, p);
    const double occupation = occupation_functional(path, config.sweep_function, at_end).back();
    for (std::size_t j = 0; j < n_eps; ++j) {
      const double eps = out.eps_values[j];
      const auto ys = covering_y_grid(path, eps, t, config.sweep_y_step, config.sweep_y_margin);
      const auto sweep = level_sweep(path, eps, t, config.sweep_function, ys);
      const double diff = std::fabs(sweep.value - occupation);
      const double rel = diff == 0.0 ? 0.0 : occupation != 0.0 ? diff / std::fabs(occupation) : diff;
      out.rows[j * n_paths + p] = {eps, config.base_seed + p, sweep.value, occupation, rel, sweep.covered};
    }
  });

  for (std::size_t j = 0; j < n_eps; ++j) {
    std::vector<double> rels;
    for (std::size_t p = 0; p < n_paths; ++p) rels.push_back(out.rows[j * n_paths + p].relative_error);
    out.mean_relative_error.push_back(mean(rels));
  }
  return out;
}

}  // namespace ltlab
