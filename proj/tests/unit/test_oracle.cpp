#include <doctest.h>

#include <cmath>
#include <vector>

#include "brute_force.hpp"
#include "ltlab/error.hpp"
#include "ltlab/oracle.hpp"

using namespace ltlab;

namespace {

double last(const Curve& c) { return c.back(); }

TimeGrid end_of(const std::vector<double>& x, double dt = 1.0) {
  return TimeGrid::single(dt, x.size() - 1);
}

}  // namespace

TEST_CASE("oracle names round-trip") {
  for (auto kind : {OracleKind::tanaka, OracleKind::upcrossing, OracleKind::occupation}) {
    CHECK(parse_oracle(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_oracle("ito"), InvalidArgument);
}

TEST_CASE("worked oracle values") {
  const std::vector<double> rising{1.0, 2.0, 3.0};
  CHECK(last(tanaka_local_time(Path::from_values(1, rising), end_of(rising))) == 0.0);
  const std::vector<double> cross{-1.0, 1.0};
  CHECK(last(tanaka_local_time(Path::from_values(1, cross), end_of(cross))) == 2.0);
  const std::vector<double> wobble{1.0, 3.0, 2.0};
  CHECK(last(ito_indicator_integral(Path::from_values(1, wobble), end_of(wobble))) == 1.0);
  const std::vector<double> jump{-1.0, 2.0};
  CHECK(last(upcrossing_local_time(Path::from_values(1, jump), 0.5, end_of(jump))) == 1.0);
  const std::vector<double> flat{0.0, 0.0, 0.0};
  CHECK(last(occupation_local_time(Path::from_values(1, flat), 1.0, end_of(flat))) == 1.0);
}

TEST_CASE("occupation functional weights by the quadratic variation density") {
  const Path b = Path::from_values(1.0, {0.0, 0.5});
  CHECK(last(occupation_functional(b, FunctionSpec::constant(1.0), TimeGrid::single(1.0, 1))) == 1.0);
  const Path driver = generate_brownian(1.0 / 8, 8, 3);
  const Path x = generate_sigma_martingale(driver, SigmaSpec::constant(2.0));
  CHECK(last(occupation_functional(x, FunctionSpec::constant(1.0), TimeGrid::single(1.0 / 8, 8))) ==
        doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("upcrossings need to restart from zero") {
  // 0 -> 1 completes one crossing; 1 -> 0.2 -> 1 does not re-arm; 0 -> 1 again does.
  const std::vector<double> x{0.0, 1.0, 0.2, 1.0, 0.0, 1.0};
  const Path p = Path::from_values(1, x);
  const Curve c = upcrossing_local_time(p, 0.5, TimeGrid::strided(1, 5));
  const std::vector<double> expected{0, 1, 1, 1, 1, 2};
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(c.values[k] == expected[k]);
}

TEST_CASE("Tanaka kernel matches the literal sum") {
  for (unsigned seed = 1; seed < 8; ++seed) {
    const auto x = brute::random_walk(120, seed);
    const Path p = Path::from_values(0.01, x);
    const TimeGrid grid = TimeGrid::strided(0.01, 120);
    const Curve c = tanaka_local_time(p, grid);
    for (std::size_t k = 0; k <= 120; ++k) {
      CHECK(c.values[k] == doctest::Approx(brute::tanaka(x, k)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("oracles start at zero and never decrease") {
  for (unsigned seed = 10; seed < 20; ++seed) {
    const auto x = brute::random_walk(200, seed);
    const Path p = Path::from_values(0.01, x);
    const TimeGrid grid = TimeGrid::strided(0.01, 200);
    for (auto kind : {OracleKind::tanaka, OracleKind::upcrossing, OracleKind::occupation}) {
      const Curve c = local_time(kind, p, 0.2, grid);
      CHECK(c.values[0] == 0.0);
      for (std::size_t k = 1; k < c.size(); ++k) CHECK(c.values[k] >= c.values[k - 1] - 1e-14);
    }
  }
}

TEST_CASE("Tanaka oracle is flat while the path keeps its sign") {
  const std::vector<double> x{-0.5, 0.3, 0.7, 0.1, 2.0, 1.5, -0.2, -0.4, -1.0, 0.6};
  const Path p = Path::from_values(1, x);
  const Curve c = tanaka_local_time(p, TimeGrid::strided(1, 9));
  for (std::size_t k : {2u, 3u, 4u, 5u}) CHECK(c.values[k] == doctest::Approx(c.values[1]));
  for (std::size_t k : {7u, 8u}) CHECK(c.values[k] == doctest::Approx(c.values[6]));
  // Each sign change adds 2|X| at the landing sample.
  CHECK(c.values[1] == doctest::Approx(0.6));
  CHECK(c.values[6] == doctest::Approx(1.0));
  CHECK(c.values[9] == doctest::Approx(2.2));
}

TEST_CASE("oracle argument errors") {
  const Path p = Path::from_values(1, {0.0, 1.0, -1.0});
  CHECK_THROWS_AS(upcrossing_local_time(p, 0.0, TimeGrid::single(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(occupation_local_time(p, -1.0, TimeGrid::single(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(tanaka_local_time(p, TimeGrid::single(1, 3)), RangeError);
  CHECK_THROWS_AS(tanaka_local_time(p, TimeGrid::single(0.5, 2)), AlignmentError);
}
