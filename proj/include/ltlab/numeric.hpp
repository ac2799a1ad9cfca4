#pragma once

#include <cmath>
#include <cstddef>
#include <string>

namespace ltlab {

/// Neumaier-compensated running sum. Terms must be added in a fixed order for
/// results to be reproducible.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Standard normal CDF, via the C library erfc.
inline double phi(double x) noexcept {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }
inline double negative_part(double x) noexcept { return x < 0.0 ? -x : 0.0; }

/// Closed catalogue of continuous test functions used against the occupation
/// density relation.
struct FunctionSpec {
  enum class Kind { constant, gaussian_bump, triangle };

  Kind kind = Kind::constant;
  double center = 0.0;  // constant: the value
  double width = 1.0;   // gaussian_bump: standard deviation; triangle: half width

  static FunctionSpec constant(double value) { return {Kind::constant, value, 1.0}; }
  static FunctionSpec gaussian_bump(double center, double width);
  static FunctionSpec triangle(double center, double half_width);

  /// Parses "constant(c)", "gaussian_bump(c,w)" or "triangle(c,h)".
  static FunctionSpec parse(const std::string& text);

  double operator()(double y) const noexcept {
    switch (kind) {
      case Kind::constant:
        return center;
      case Kind::gaussian_bump: {
        const double z = (y - center) / width;
        return std::exp(-0.5 * z * z);
      }
      case Kind::triangle: {
        const double d = 1.0 - std::fabs(y - center) / width;
        return d > 0.0 ? d : 0.0;
      }
    }
    return 0.0;
  }

  double sup_norm() const noexcept {
    return kind == Kind::constant ? std::fabs(center) : 1.0;
  }

  std::string to_string() const;
};

/// Composite Simpson rule for the integral of y * phi(-y) over [0, upper].
/// For upper >= 1 the neglected tail is at most phi(-upper), since
/// y * phi(-y) <= density(y) there.
double quarter_integral(double upper = 12.0, std::size_t intervals = 1 << 14);

}  // namespace ltlab
