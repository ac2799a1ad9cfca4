#include "ltlab/paths.hpp"

#include <boost/random/normal_distribution.hpp>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "ltlab/error.hpp"

namespace ltlab {

SigmaSpec::SigmaSpec(Formula formula, double c0, double c1, double frequency,
                     double declared_gamma, double lower_bound_a)
    : formula_(formula),
      c0_(c0),
      c1_(formula == Formula::constant ? 0.0 : c1),
      frequency_(formula == Formula::constant ? 0.0 : frequency),
      gamma_(declared_gamma),
      lower_bound_(lower_bound_a) {
  if (!std::isfinite(c0_) || !std::isfinite(c1_) || !std::isfinite(frequency_)) {
    throw ValidationError("sigma parameters must be finite");
  }
  if (!(gamma_ > 0.25 && gamma_ <= 1.0)) {
    throw ValidationError("sigma Hoelder order must lie in (1/4, 1]");
  }
  if (!(lower_bound_ > 0.0)) throw ValidationError("sigma lower bound must be positive");
}

SigmaSpec SigmaSpec::constant(double c0) {
  return SigmaSpec(Formula::constant, c0, 0.0, 0.0, 1.0, std::fabs(c0));
}

SigmaSpec SigmaSpec::affine_sine(double c0, double c1, double frequency) {
  return SigmaSpec(Formula::affine_sine, c0, c1, frequency, 1.0,
                   std::fabs(c0) - std::fabs(c1));
}

double SigmaSpec::operator()(double t) const noexcept {
  if (formula_ == Formula::constant) return c0_;
  return c0_ + c1_ * std::sin(frequency_ * t);
}

void SigmaSpec::validate_on_grid(double dt, std::size_t n_points) const {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_points; ++i) {
    lowest = std::fmin(lowest, std::fabs((*this)(static_cast<double>(i) * dt)));
  }
  if (lowest < lower_bound_) {
    throw ValidationError("min |sigma| on the grid is " + std::to_string(lowest) +
                          ", below the declared bound " + std::to_string(lower_bound_));
  }
}

std::string SigmaSpec::to_string() const {
  auto num = [](double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
  };
  if (formula_ == Formula::constant) return "constant(" + num(c0_) + ")";
  return "affine_sine(" + num(c0_) + "," + num(c1_) + "," + num(frequency_) + ")";
}

Path Path::from_values(double dt, std::vector<double> values,
                       std::optional<std::size_t> horizon_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (values.size() < 2) throw InvalidArgument("a path needs at least two samples");
  Path p;
  p.dt_ = dt;
  p.values_ = std::move(values);
  p.horizon_steps_ = horizon_steps.value_or(p.values_.size() - 1);
  if (p.horizon_steps_ > p.steps()) throw InvalidArgument("horizon exceeds the sampled range");
  return p;
}

double Path::qv_density(std::size_t i) const noexcept {
  if (!sigma_) return 1.0;
  const double s = (*sigma_)(static_cast<double>(i) * dt_);
  return s * s;
}

Path generate_brownian(double dt, std::size_t n_steps, std::uint64_t seed,
                       std::optional<std::size_t> horizon_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (n_steps == 0) throw InvalidArgument("n_steps must be at least 1");
  if (horizon_steps && *horizon_steps > n_steps) {
    throw InvalidArgument("horizon exceeds the sampled range");
  }
  Path p;
  p.dt_ = dt;
  p.seed_ = seed;
  p.kind_ = PathKind::brownian;
  p.horizon_steps_ = horizon_steps.value_or(n_steps);
  p.values_.resize(n_steps + 1);

  std::mt19937_64 engine(seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(dt);
  double x = 0.0;
  p.values_[0] = 0.0;
  for (std::size_t i = 1; i <= n_steps; ++i) {
    x += scale * normal(engine);
    p.values_[i] = x;
  }
  return p;
}

Path generate_sigma_martingale(const Path& driver, const SigmaSpec& sigma) {
  if (driver.kind() != PathKind::brownian) {
    throw InvalidArgument("the driver of a sigma martingale must be Brownian");
  }
  sigma.validate_on_grid(driver.dt(), driver.values().size());
  Path p = driver;
  p.kind_ = PathKind::sigma_martingale;
  p.sigma_ = sigma;
  const auto b = driver.values();
  if (sigma.formula() == SigmaSpec::Formula::constant) {
    // The left-point sum telescopes to c0 * (B_k - B_0).
    for (std::size_t k = 0; k < b.size(); ++k) p.values_[k] = sigma.c0() * (b[k] - b[0]);
    return p;
  }
  double x = 0.0;
  p.values_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    x += sigma(static_cast<double>(i) * driver.dt()) * (b[i + 1] - b[i]);
    p.values_[i + 1] = x;
  }
  return p;
}

Path shift_level(const Path& path, double y) {
  Path p = path;
  if (y == 0.0) return p;
  for (double& v : p.values_) v -= y;
  p.level_offset_ += y;
  return p;
}

}  // namespace ltlab
