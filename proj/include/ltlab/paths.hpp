#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltlab {

/// Integrand of a martingale X = int sigma dB, from a closed catalogue so the
/// Hoelder order and the lower bound can be checked.
///
///   constant:    sigma(t) = c0
///   affine_sine: sigma(t) = c0 + c1 * sin(frequency * t)
class SigmaSpec {
 public:
  enum class Formula { constant, affine_sine };

  /// Throws ValidationError unless 1/4 < declared_gamma <= 1 and lower_bound_a > 0.
  SigmaSpec(Formula formula, double c0, double c1, double frequency,
            double declared_gamma, double lower_bound_a);

  static SigmaSpec constant(double c0);
  /// Lipschitz (gamma = 1) sine with lower bound |c0| - |c1|.
  static SigmaSpec affine_sine(double c0, double c1, double frequency);

  double operator()(double t) const noexcept;

  /// Throws ValidationError if min_i |sigma(i*dt)|, i = 0..n_points-1, is
  /// below the declared lower bound.
  void validate_on_grid(double dt, std::size_t n_points) const;

  Formula formula() const noexcept { return formula_; }
  double c0() const noexcept { return c0_; }
  double c1() const noexcept { return c1_; }
  double frequency() const noexcept { return frequency_; }
  double declared_gamma() const noexcept { return gamma_; }
  double lower_bound_a() const noexcept { return lower_bound_; }

  std::string to_string() const;

 private:
  Formula formula_;
  double c0_, c1_, frequency_;
  double gamma_, lower_bound_;
};

enum class PathKind { brownian, sigma_martingale };

/// An immutable, uniformly sampled trajectory: values[i] = X at time i*dt.
/// The analysis horizon may be shorter than the sampled range; the extra
/// samples serve forward-looking estimators.
class Path {
 public:
  /// Builds a path from explicit samples. `horizon_steps` defaults to the
  /// whole path (values.size() - 1).
  static Path from_values(double dt, std::vector<double> values,
                          std::optional<std::size_t> horizon_steps = std::nullopt);

  double dt() const noexcept { return dt_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  /// Number of steps N (values has N+1 entries).
  std::size_t steps() const noexcept { return values_.size() - 1; }
  std::size_t horizon_steps() const noexcept { return horizon_steps_; }
  double horizon() const noexcept { return static_cast<double>(horizon_steps_) * dt_; }
  std::uint64_t seed() const noexcept { return seed_; }
  PathKind kind() const noexcept { return kind_; }
  double level_offset() const noexcept { return level_offset_; }
  const std::optional<SigmaSpec>& sigma() const noexcept { return sigma_; }

  /// d[X,X]/dt at grid index i: 1 for Brownian paths, sigma(t_i)^2 otherwise.
  double qv_density(std::size_t i) const noexcept;

 private:
  Path() = default;

  double dt_ = 1.0;
  std::vector<double> values_;
  std::size_t horizon_steps_ = 0;
  std::uint64_t seed_ = 0;
  PathKind kind_ = PathKind::brownian;
  double level_offset_ = 0.0;
  std::optional<SigmaSpec> sigma_;

  friend Path generate_brownian(double, std::size_t, std::uint64_t, std::optional<std::size_t>);
  friend Path generate_sigma_martingale(const Path&, const SigmaSpec&);
  friend Path shift_level(const Path&, double);
};

/// Standard Brownian motion on n_steps steps of size dt, X_0 = 0. Increments
/// are sqrt(dt) * Z with Z drawn by the ziggurat normal sampler over a
/// 64-bit Mersenne Twister seeded with `seed`.
Path generate_brownian(double dt, std::size_t n_steps, std::uint64_t seed,
                       std::optional<std::size_t> horizon_steps = std::nullopt);

/// Left-point Ito sum X_k = sum_{i<k} sigma(t_i) (B_{i+1} - B_i).
Path generate_sigma_martingale(const Path& driver, const SigmaSpec& sigma);

/// X - y, so that level-y functionals become level-0 functionals.
Path shift_level(const Path& path, double y);

}  // namespace ltlab
