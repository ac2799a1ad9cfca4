#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ltlab/error.hpp"
#include "ltlab/experiment.hpp"
#include "ltlab/oracle.hpp"

using namespace ltlab;

namespace {

ExperimentConfig tiny(const std::string& extra = "") {
  return parse_config_text("T = 1\ndt_exp = 14\neps_exps = 2..6\npaths = 6\nseed = 11\n"
                           "estimator = J,I1,I2,R\n" + extra);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ltlab_experiment_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("experiment paths use consecutive seeds and the forward margin") {
  auto c = tiny("level = 0.5\n");
  const Path p = experiment_path(c, 2);
  CHECK(p.seed() == 13);
  CHECK(p.horizon_steps() == c.horizon_steps());
  CHECK(p.steps() == c.path_steps());
  const Path b = generate_brownian(c.dt(), c.path_steps(), 13);
  CHECK(p[100] == b[100] - 0.5);
}

TEST_CASE("parallel map covers every index once") {
  std::vector<int> hits(37, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(5, 2, [](std::size_t i) {
                    if (i == 3) throw RangeError("boom");
                  }),
                  RangeError);
}

TEST_CASE("rate experiment errors are the sup distance to the oracle") {
  const auto c = tiny();
  const auto r = run_rate_experiment(c);
  CHECK(r.eps_values.size() == 5);
  CHECK(r.reports.size() == 4 * 5);
  CHECK(r.seeds.front() == 11);
  const Path p = experiment_path(c, 0);
  // The sup runs over every grid point, not only the reported ones.
  const TimeGrid grid = TimeGrid::strided(c.dt(), c.horizon_steps());
  const Curve oracle = tanaka_local_time(p, grid);
  const double eps = r.eps_values[3];
  const Curve j = j_epsilon(p, eps, grid);
  CHECK(r.report(EstimatorKind::J, eps).per_path_sup_error[0] ==
        doctest::Approx(sup_error(j, oracle)).epsilon(1e-12));
  CHECK(r.fits.count(EstimatorKind::J) == 1);
  CHECK(r.fit_diagnostics.empty());
  // eps = 4^-1, 4^-2, 4^-3 lie among 2^-2..2^-6.
  REQUIRE(r.subsequence_fraction);
  CHECK(r.subsequence_eps.size() == 3);
}

TEST_CASE("rate fit is refused with a diagnostic when there are too few windows") {
  auto c = tiny("eps_exps = 4\n");
  const auto r = run_rate_experiment(c);
  CHECK(r.fits.empty());
  CHECK(r.fit_diagnostics.count(EstimatorKind::J) == 1);
  CHECK_FALSE(r.subsequence_fraction);
  const Report rep = make_report(c, r);
  CHECK_FALSE(rep.diagnostics.empty());
}

TEST_CASE("thread count does not change any output") {
  auto one = tiny("threads = 1\n");
  auto two = tiny("threads = 2\n");
  const auto a = make_report(one, run_rate_experiment(one));
  const auto b = make_report(two, run_rate_experiment(two));
  CHECK(a.files == b.files);
  const auto fa = make_report(one, run_identity_check(one));
  const auto fb = make_report(two, run_identity_check(two));
  CHECK(fa.files == fb.files);
}

TEST_CASE("unit sigma reproduces the Brownian results") {
  auto brownian = tiny();
  auto sigma = tiny("generator = sigma_martingale\nsigma = 1,0,0\n");
  const auto a = run_rate_experiment(brownian);
  const auto b = run_rate_experiment(sigma);
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    CHECK(a.reports[i].per_path_sup_error == b.reports[i].per_path_sup_error);
  }
}

TEST_CASE("identity experiment") {
  const auto r = run_identity_check(tiny());
  CHECK(r.rows.size() == 5 * 6);
  CHECK(r.max_violation_i1_i2 <= 1e-9);
  CHECK(r.max_violation_i3_i5_r <= 1e-9);
  CHECK(r.mean_sup_remainder.size() == 5);
  CHECK(relative_violation(0.0, 0.0, 0.0) == 0.0);
  CHECK(relative_violation(1.0, 1.5, 2.0) == 0.25);
}

TEST_CASE("fractions experiment") {
  const auto c = tiny("paths = 4\n");
  const auto r = run_fractions_experiment(c);
  CHECK(r.rows.size() == 4 * 5);
  const auto& row = r.row("I3/L", r.eps_values.back());
  CHECK(row.target == 0.5);
  CHECK(row.n_used + row.n_excluded == 4);
  CHECK(r.row("SmoothedQuarter/L", r.eps_values.back()).target == 0.25);
}

TEST_CASE("sweep experiment") {
  const auto c = tiny("paths = 2\neps_exps = 6\n");
  const auto r = run_sweep_experiment(c);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.covered);
    CHECK(row.occupation > 0.0);
    CHECK(row.relative_error == doctest::Approx(std::fabs(row.level_sweep - row.occupation) / row.occupation));
  }
}

TEST_CASE("reports on disk") {
  const auto dir = scratch("rate");
  auto c = tiny();
  c.output_dir = dir.string();
  const Report rep = run_experiment(ExperimentKind::rate, c);
  const std::string hash = config_hash(c);
  CHECK(rep.config_hash == hash);
  for (const char* name : {"errors.csv", "rate.csv", "curves.csv"}) {
    const std::string text = slurp(dir / name);
    CHECK(text.rfind("# config_hash=" + hash + "\n", 0) == 0);
    CHECK(text == rep.files.at(name));
  }
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("config_hash") == hash);

  // A second run writes byte-identical files.
  const auto again = run_experiment(ExperimentKind::rate, c);
  CHECK(again.files == rep.files);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output directory") {
  const auto dir = scratch("blocked");
  std::filesystem::create_directories(dir);
  const auto file = dir / "plain_file";
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(ensure_writable_directory(file.string()), IoError);
  auto c = tiny();
  c.output_dir = (file / "sub").string();
  CHECK_THROWS_AS(run_experiment(ExperimentKind::identity, c), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid configs are rejected before running") {
  auto c = tiny("eps_exps = 2..8\n");
  CHECK_THROWS_AS(run_experiment(ExperimentKind::rate, c), ValidationError);
  CHECK(parse_experiment("sweep") == ExperimentKind::sweep);
  CHECK_THROWS_AS(parse_experiment("other"), InvalidArgument);
}
