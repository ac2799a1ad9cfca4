#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ltlab/analysis.hpp"
#include "ltlab/estimators.hpp"
#include "ltlab/oracle.hpp"

using namespace ltlab;

// Ensemble properties at reduced scale. Seeds are fixed, so every check is
// deterministic; bands are several standard errors wide.

namespace {

struct Means {
  double tanaka = 0, upcrossing = 0, occupation = 0;
};

Means oracle_means(int dt_exp, double h, int n_paths) {
  const double dt = std::ldexp(1.0, -dt_exp);
  const std::size_t n = std::size_t{1} << dt_exp;
  const TimeGrid end = TimeGrid::single(dt, n);
  Means m;
  for (int s = 1; s <= n_paths; ++s) {
    const Path p = generate_brownian(dt, n, static_cast<std::uint64_t>(s));
    m.tanaka += tanaka_local_time(p, end).back() / n_paths;
    m.upcrossing += upcrossing_local_time(p, h, end).back() / n_paths;
    m.occupation += occupation_local_time(p, h, end).back() / n_paths;
  }
  return m;
}

}  // namespace

TEST_CASE("mean local time at T = 1 is close to sqrt(2/pi)") {
  const double dt = std::ldexp(1.0, -14);
  const std::size_t n = 1u << 14;
  const TimeGrid end = TimeGrid::single(dt, n);
  double sum = 0;
  const int paths = 4000;
  for (int s = 0; s < paths; ++s) sum += tanaka_local_time(generate_brownian(dt, n, 1000 + s), end).back();
  // sd(L_1) ~ 0.6, standard error ~ 0.0095.
  CHECK(sum / paths == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(0.04));
}

TEST_CASE("upcrossing and occupation oracles agree with Tanaka on a wide strip") {
  // h = 2^-4 is 32 steps of sqrt(dt); the discrete overshoot costs about 3.5%.
  const Means m = oracle_means(18, 1.0 / 16, 256);
  CHECK(m.upcrossing / m.tanaka >= 0.9);
  CHECK(m.upcrossing / m.tanaka <= 1.1);
  CHECK(m.occupation / m.tanaka >= 0.9);
  CHECK(m.occupation / m.tanaka <= 1.1);
}

TEST_CASE("upcrossing count on a strip two steps wide shows the overshoot deficit") {
  // A discretely monitored walk overshoots 0 and h by about 0.5826 sqrt(dt)
  // each, so 2h U_h estimates L * h / (h + 1.165 sqrt(dt)): 0.632 at h = 2 sqrt(dt).
  const Means m = oracle_means(20, 1.0 / 512, 64);
  const double predicted = 2.0 / (2.0 + 2.0 * 0.5826);
  CHECK(m.upcrossing / m.tanaka == doctest::Approx(predicted).epsilon(0.05));
  CHECK(m.occupation / m.tanaka >= 0.9);
  CHECK(m.occupation / m.tanaka <= 1.1);
}

TEST_CASE("regularized quadratic variation has mean t") {
  const double dt = std::ldexp(1.0, -16);
  const double eps = std::ldexp(1.0, -8);
  const std::size_t n = 1u << 16;
  const TimeGrid grid(dt, {n / 4, n / 2, n});
  std::vector<double> mean(3, 0.0);
  for (int s = 1; s <= 64; ++s) {
    const Path p = generate_brownian(dt, n + 256, s, n);
    const Curve qv = quadratic_variation_reg(p, eps, grid);
    for (std::size_t g = 0; g < 3; ++g) mean[g] += qv.values[g] / 64;
  }
  CHECK(mean[0] == doctest::Approx(0.25).epsilon(0.03));
  CHECK(mean[1] == doctest::Approx(0.5).epsilon(0.03));
  CHECK(mean[2] == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("sigma martingale quadratic variation tracks the integral of sigma squared") {
  const double dt = std::ldexp(1.0, -16);
  const std::size_t n = 1u << 16;
  const auto sigma = SigmaSpec::affine_sine(1.0, 0.5, 2 * std::numbers::pi);
  double qv = 0;
  for (int s = 1; s <= 16; ++s) {
    const Path x = generate_sigma_martingale(generate_brownian(dt, n, s), sigma);
    for (std::size_t i = 0; i < n; ++i) qv += (x[i + 1] - x[i]) * (x[i + 1] - x[i]) / 16;
  }
  // int_0^1 (1 + 0.5 sin 2 pi s)^2 ds = 1.125
  CHECK(qv == doctest::Approx(1.125).epsilon(0.05));
}

TEST_CASE("remainder shrinks with the window") {
  const double dt = std::ldexp(1.0, -17);
  const std::size_t n = 1u << 17;
  const TimeGrid grid = TimeGrid::strided(dt, n, 128);
  std::vector<double> eps_values{std::ldexp(1.0, -3), std::ldexp(1.0, -5), std::ldexp(1.0, -7),
                                 std::ldexp(1.0, -9)};
  std::vector<double> mean_sup(eps_values.size(), 0.0);
  for (int s = 1; s <= 32; ++s) {
    const Path p = generate_brownian(dt, n + (n >> 3), s, n);
    for (std::size_t j = 0; j < eps_values.size(); ++j) {
      const Curve r = remainder(p, eps_values[j], grid);
      double sup = 0;
      for (double v : r.values) sup = std::max(sup, std::fabs(v));
      mean_sup[j] += sup / 32;
    }
  }
  CHECK(nearly_nonincreasing(mean_sup));
  CHECK(mean_sup.back() <= 0.5 * mean_sup.front());
}

TEST_CASE("J approaches the Tanaka oracle as the window shrinks") {
  const double dt = std::ldexp(1.0, -18);
  const std::size_t n = 1u << 18;
  const TimeGrid grid = TimeGrid::strided(dt, n, 256);
  std::vector<double> coarse, fine;
  for (int s = 1; s <= 32; ++s) {
    const Path p = generate_brownian(dt, n + (n >> 4), s, n);
    const Curve oracle = tanaka_local_time(p, grid);
    coarse.push_back(sup_error(j_epsilon(p, std::ldexp(1.0, -4), grid), oracle));
    fine.push_back(sup_error(j_epsilon(p, std::ldexp(1.0, -10), grid), oracle));
  }
  CHECK(l2_ensemble_error(fine).l2_estimate < 0.75 * l2_ensemble_error(coarse).l2_estimate);
}
