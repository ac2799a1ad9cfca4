#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "ltlab/config.hpp"
#include "ltlab/error.hpp"

using namespace ltlab;

namespace {

// Reference FNV-1a, 64 bit.
std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig small() {
  return parse_config_text("T = 1\ndt_exp = 12\neps_exps = 2..4\npaths = 4\n");
}

}  // namespace

TEST_CASE("reference FNV-1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("defaults") {
  const ExperimentConfig c;
  CHECK(c.dt() == std::ldexp(1.0, -20));
  CHECK(c.horizon_steps() == (1u << 20));
  CHECK(c.eps_values().size() == 8);
  CHECK(c.eps_values().front() == 1.0 / 16);
  CHECK(c.eps_values().back() == 1.0 / 2048);
  CHECK(c.reporting_stride() == 1024);
  CHECK(c.path_steps() == (1u << 20) + (1u << 16));
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("parsing keys and comments") {
  const auto c = parse_config_text(R"(# a comment
T = 2
dt_exp = 14   # trailing comment
eps_exps = 3,5
paths = 7
seed = 99
level = 0.25
generator = sigma_martingale
sigma = 1,0.5,2pi
estimator = J, i1 ,SmoothedQuarter
oracle = upcrossing
h = 0.0625
stride = 16
function = triangle(0,1)
y_step = 0.125
y_margin = 0.5
out = results
threads = 3
)");
  CHECK(c.horizon == 2.0);
  CHECK(c.dt_exponent == 14);
  CHECK(c.eps_exponents == std::vector<int>{3, 5});
  CHECK(c.n_paths == 7);
  CHECK(c.base_seed == 99);
  CHECK(c.level_y == 0.25);
  CHECK(c.generator == PathKind::sigma_martingale);
  REQUIRE(c.sigma);
  CHECK(c.sigma->c1() == 0.5);
  CHECK(c.sigma->frequency() == doctest::Approx(2 * std::numbers::pi));
  CHECK(c.estimators == std::vector<EstimatorKind>{EstimatorKind::J, EstimatorKind::I1,
                                                   EstimatorKind::SmoothedQuarter});
  CHECK(c.oracle == OracleKind::upcrossing);
  CHECK(c.oracle_h == 0.0625);
  CHECK(c.reporting_stride() == 16);
  CHECK(c.sweep_function.kind == FunctionSpec::Kind::triangle);
  CHECK(c.output_dir == "results");
  CHECK(c.threads == 3);
  CHECK(c.eps_values() == std::vector<double>{0.125, 0.03125});
}

TEST_CASE("constant sigma from the c1 = 0 form") {
  const auto c = parse_config_text("sigma = 2,0,0\n");
  REQUIRE(c.sigma);
  CHECK(c.sigma->formula() == SigmaSpec::Formula::constant);
  CHECK(c.sigma->c0() == 2.0);
}

TEST_CASE("malformed settings") {
  ExperimentConfig c;
  CHECK_THROWS_AS(apply_setting(c, "nonsense", "1"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "paths", "many"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "paths", "-3"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "eps_exps", "4..x"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "estimator", "I9"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "generator", "levy"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "sigma", "1,2"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "function", "cosine(1)"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("T 1\n"), ValidationError);
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(small()));
  auto c = small();
  c.eps_exponents = {2, 13};
  c.allow_coarse_dt = true;
  CHECK_THROWS_AS(validate(c), ValidationError);  // eps finer than dt

  c = small();
  c.eps_exponents = {5};
  CHECK_THROWS_AS(validate(c), ValidationError);  // dt not 2^-8 below eps
  c.allow_coarse_dt = true;
  CHECK_NOTHROW(validate(c));

  c = small();
  c.eps_exponents = {3, 3};
  CHECK_THROWS_AS(validate(c), ValidationError);

  c = small();
  c.horizon = 1.0 + std::ldexp(1.0, -13);
  CHECK_THROWS_AS(validate(c), ValidationError);

  c = small();
  c.n_paths = 0;
  CHECK_THROWS_AS(validate(c), ValidationError);

  c = small();
  c.generator = PathKind::sigma_martingale;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c.sigma = SigmaSpec(SigmaSpec::Formula::affine_sine, 1.0, 0.5, 2 * std::numbers::pi, 1.0, 0.6);
  CHECK_THROWS_AS(validate(c), ValidationError);
  c.sigma = SigmaSpec::affine_sine(1.0, 0.5, 2 * std::numbers::pi);
  CHECK_NOTHROW(validate(c));

  c = small();
  c.oracle_h = 0.0;
  CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("config hash") {
  const auto a = small();
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == fnv1a_hex(canonical_text(a)));

  auto b = a;
  b.output_dir = "elsewhere";
  b.threads = 7;
  CHECK(config_hash(b) == config_hash(a));

  b = a;
  b.eps_exponents = {4, 3, 2};
  CHECK(config_hash(b) == config_hash(a));

  b = a;
  b.base_seed = 2;
  CHECK(config_hash(b) != config_hash(a));
  b = a;
  b.oracle_h = 0.001;
  CHECK(config_hash(b) != config_hash(a));
}

TEST_CASE("config file loading") {
  const auto dir = std::filesystem::temp_directory_path() / "ltlab_config_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "run.cfg";
  {
    std::ofstream(file) << "paths = 5\nseed = 3\n";
  }
  const auto c = load_config_file(file.string());
  CHECK(c.n_paths == 5);
  CHECK(c.base_seed == 3);
  CHECK_THROWS_AS(load_config_file((dir / "missing.cfg").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(std::ldexp(1.0, -20))) == std::ldexp(1.0, -20));
}
