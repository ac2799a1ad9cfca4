#pragma once

// Literal transcriptions of the discrete sums, evaluated term by term with
// explicit indices. Test-only; shares no code with the library kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace brute {

inline double pos(double x) { return x > 0 ? x : 0; }
inline double neg(double x) { return x < 0 ? -x : 0; }
inline double ind(bool b) { return b ? 1.0 : 0.0; }

// Each returns the value at grid index k for window m steps, step dt.
inline double j(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += (ind(0 < x[i + m]) - ind(0 < x[i])) * (x[i + m] - x[i]) * dt;
  return s / (m * dt);
}

inline double i1(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += ind(0 < x[i]) * (x[i + m] - x[i]) * dt;
  return s / (m * dt);
}

inline double i2(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += ind(0 < x[i + m]) * (x[i + m] - x[i]) * dt;
  return s / (m * dt);
}

inline double i3(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double f = x[std::min(i + m, k)];
    s += (pos(f) * ind(x[i] <= 0) + neg(f) * ind(x[i] > 0)) * dt;
  }
  return s / (m * dt);
}

inline double i4(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += neg(x[i]) * ind(x[std::min(i + m, k)] > 0) * dt;
  return s / (m * dt);
}

inline double i5(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += pos(x[i]) * ind(x[std::min(i + m, k)] <= 0) * dt;
  return s / (m * dt);
}

inline double smoothed(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  const double eps = m * dt;
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    s += pos(x[i]) * 0.5 * std::erfc(x[i] / std::sqrt(eps) / std::sqrt(2.0)) * dt;
  }
  return s / eps;
}

inline double quad_var(const std::vector<double>& x, std::size_t m, std::size_t k, double dt) {
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) s += (x[i + m] - x[i]) * (x[i + m] - x[i]) * dt;
  return s / (m * dt);
}

inline double tanaka(const std::vector<double>& x, std::size_t k) {
  double ito = 0;
  for (std::size_t i = 0; i < k; ++i) ito += ind(x[i] > 0) * (x[i + 1] - x[i]);
  return 2 * (pos(x[k]) - pos(x[0]) - ito);
}

// Random walk with occasional exact zeros and sign changes.
inline std::vector<double> random_walk(std::size_t n, unsigned seed, bool allow_zero = true) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> z(0.0, 0.3);
  std::uniform_int_distribution<int> coin(0, 9);
  std::vector<double> x(n + 1);
  x[0] = z(gen);
  for (std::size_t i = 1; i <= n; ++i) {
    x[i] = x[i - 1] + z(gen);
    if (allow_zero && coin(gen) == 0) x[i] = 0.0;
    if (!allow_zero && x[i] == 0.0) x[i] = 1e-3;
  }
  return x;
}

}  // namespace brute
