// Command-line driver. Links only the C interface of the library.

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/ltlab.h"

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace {

enum ExitCode { kSuccess = 0, kValidation = 1, kCheckFailed = 2, kIo = 3 };

int exit_code_for(ltl_status status) {
  return status == LTL_E_IO ? kIo : kValidation;
}

struct Options {
  std::string config_file;
  std::map<std::string, std::string> settings;
  bool allow_coarse_dt = false;
  bool check = false;
  bool quiet = false;
};

void add_options(CLI::App& cmd, Options& opts) {
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"--T", "T"},
      {"--dt-exp", "dt_exp"},
      {"--eps-exps", "eps_exps"},
      {"--paths", "paths"},
      {"--seed", "seed"},
      {"--level", "level"},
      {"--generator", "generator"},
      {"--sigma", "sigma"},
      {"--estimator", "estimator"},
      {"--oracle", "oracle"},
      {"--out", "out"},
      {"--threads", "threads"},
      {"--strip-width", "h"},
      {"--stride", "stride"},
      {"--function", "function"},
      {"--y-step", "y_step"},
      {"--y-margin", "y_margin"},
  };
  static const std::map<std::string, std::string> kHelp = {
      {"T", "horizon T in seconds"},
      {"dt_exp", "grid step dt = 2^-e"},
      {"eps_exps", "windows eps = 2^-k, e.g. 4..11 or 4,6,8"},
      {"paths", "number of paths (seeds seed..seed+paths-1)"},
      {"seed", "base seed"},
      {"level", "level y"},
      {"generator", "brownian | sigma_martingale"},
      {"sigma", "c0,c1,freq for sigma(t) = c0 + c1 sin(freq t); freq may use 'pi'"},
      {"estimator", "comma list of J,I1,I2,I3,I4,I5,R,SmoothedQuarter,QuadVar"},
      {"oracle", "tanaka | upcrossing | occupation"},
      {"out", "output directory"},
      {"threads", "worker threads (0: all cores)"},
      {"h", "strip width of the upcrossing and occupation oracles"},
      {"stride", "report every s-th grid point in curves.csv"},
      {"function", "sweep test function, e.g. gaussian_bump(0,0.5)"},
      {"y_step", "sweep level spacing"},
      {"y_margin", "sweep level margin beyond the path range"},
  };
  cmd.add_option("--config", opts.config_file, "flat key = value config file");
  for (const auto& [flag, key] : kFlags) {
    cmd.add_option_function<std::string>(
        flag, [&opts, key = key](const std::string& v) { opts.settings[key] = v; }, kHelp.at(key));
  }
  cmd.add_flag("--allow-coarse-dt", opts.allow_coarse_dt, "permit dt > min(eps) * 2^-8");
  cmd.add_flag("--check", opts.check, "exit with status 2 if an acceptance check fails");
  cmd.add_flag("-q,--quiet", opts.quiet, "print only failures");
}

int report_error(ltl_status status, const char* context) {
  std::fprintf(stderr, "ltlab: %s: %s: %s\n", context, ltl_status_name(status), ltl_last_error());
  return exit_code_for(status);
}

int run(const std::string& experiment, const Options& opts) {
  ltl_config* config = nullptr;
  if (auto s = ltl_config_new(&config); s != LTL_OK) return report_error(s, "config");
  std::unique_ptr<ltl_config, decltype(&ltl_config_free)> config_guard(config, ltl_config_free);

  if (!opts.config_file.empty()) {
    if (auto s = ltl_config_load(config, opts.config_file.c_str()); s != LTL_OK) {
      return report_error(s, "config file");
    }
  }
  for (const auto& [key, value] : opts.settings) {
    if (auto s = ltl_config_set(config, key.c_str(), value.c_str()); s != LTL_OK) {
      return report_error(s, key.c_str());
    }
  }
  if (opts.allow_coarse_dt) ltl_config_set(config, "allow_coarse_dt", "true");

  ltl_experiment kind{};
  if (auto s = ltl_experiment_from_name(experiment.c_str(), &kind); s != LTL_OK) {
    return report_error(s, "experiment");
  }
  ltl_report* report = nullptr;
  if (auto s = ltl_run(kind, config, &report); s != LTL_OK) return report_error(s, experiment.c_str());
  std::unique_ptr<ltl_report, decltype(&ltl_report_free)> report_guard(report, ltl_report_free);

  std::printf("%s: config %s\n", experiment.c_str(), ltl_config_hash(config));
  for (std::size_t i = 0; i < ltl_report_diagnostic_count(report); ++i) {
    std::printf("  note: %s\n", ltl_report_diagnostic(report, i));
  }
  for (std::size_t i = 0; i < ltl_report_check_count(report); ++i) {
    const char* name = nullptr;
    const char* bound = nullptr;
    int passed = 0;
    double value = 0.0;
    ltl_report_check(report, i, &name, &passed, &value, &bound);
    if (opts.quiet && passed) continue;
    std::printf("  [%s] %-28s %.6g  (%s)\n", passed ? "PASS" : "FAIL", name, value, bound);
  }
  if (opts.check && !ltl_report_passed(report)) return kCheckFailed;
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Curves are megabytes each; keep freed blocks in the heap instead of
  // returning them to the kernel and faulting them back in.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  CLI::App app{"Monte Carlo laboratory for regularized Brownian local-time estimators"};
  app.require_subcommand(1);
  std::map<std::string, Options> options;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rate", "L2 sup errors against the oracle and log-log rate fit"},
      {"fractions", "I3, I4, I5 and the smoothed term as fractions of local time"},
      {"identity", "exact decompositions of J and decay of the remainder"},
      {"sweep", "level sweep of J against the occupation functional"},
  };
  for (const auto& [name, help] : commands) add_options(*app.add_subcommand(name, help), options[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }
  for (const auto& [name, help] : commands) {
    if (app.got_subcommand(name)) return run(name, options[name]);
  }
  return kValidation;
}
