#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ltlab/error.hpp"
#include "ltlab/numeric.hpp"

using namespace ltlab;

TEST_CASE("phi at reference points") {
  CHECK(phi(0.0) == 0.5);
  // mpmath ncdf at 30 digits
  CHECK(std::fabs(phi(1.96) - 0.975002104851779563787) <= 1e-12);
  CHECK(std::fabs(phi(-1.0) - 0.158655253931457051414) <= 1e-12);
  for (double x : {0.5, 1.0, 2.0, 5.0}) CHECK(std::fabs(phi(-x) + phi(x) - 1.0) <= 1e-15);
}

TEST_CASE("phi saturates in the tails") {
  CHECK(phi(-40.0) == doctest::Approx(0.0));
  CHECK(phi(40.0) == 1.0);
  CHECK(std::isfinite(phi(-1e300)));
}

TEST_CASE("integral of y phi(-y) over the half line is one quarter") {
  CHECK(std::fabs(quarter_integral() - 0.25) <= 1e-8);
  // Tail past 12 is at most phi(-12) ~ 2e-33, so the truncation does not show.
  CHECK(std::fabs(quarter_integral(12.0, 1 << 16) - quarter_integral()) <= 1e-12);
}

TEST_CASE("compensated sum recovers cancelled low-order terms") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("compensated sum is at least as accurate as naive summation") {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> z;
  std::vector<double> xs(200000);
  for (auto& x : xs) x = z(gen) * 1e3;
  long double exact = 0;
  double naive = 0;
  CompensatedSum s;
  for (double x : xs) {
    exact += x;
    naive += x;
    s.add(x);
  }
  CHECK(std::fabs(s.value() - static_cast<double>(exact)) <=
        std::fabs(naive - static_cast<double>(exact)) + 1e-9);
}

TEST_CASE("function catalogue") {
  const auto bump = FunctionSpec::gaussian_bump(1.0, 0.5);
  CHECK(bump(1.0) == 1.0);
  CHECK(bump(1.5) == doctest::Approx(std::exp(-0.5)));
  const auto tri = FunctionSpec::triangle(0.0, 2.0);
  CHECK(tri(1.0) == 0.5);
  CHECK(tri(-3.0) == 0.0);
  CHECK(FunctionSpec::constant(3.0)(123.0) == 3.0);
  CHECK(FunctionSpec::constant(-3.0).sup_norm() == 3.0);

  CHECK(FunctionSpec::parse("gaussian_bump(0,0.5)").to_string() == "gaussian_bump(0,0.5)");
  CHECK(FunctionSpec::parse("triangle(1,2)").kind == FunctionSpec::Kind::triangle);
  CHECK(FunctionSpec::parse("constant(0)")(5.0) == 0.0);
  CHECK_THROWS_AS(FunctionSpec::parse("bump(0,1)"), InvalidArgument);
  CHECK_THROWS_AS(FunctionSpec::parse("gaussian_bump(0)"), InvalidArgument);
  CHECK_THROWS_AS(FunctionSpec::parse("gaussian_bump(0,-1)"), InvalidArgument);
  CHECK_THROWS_AS(FunctionSpec::parse("gaussian_bump(0,x)"), InvalidArgument);
}
