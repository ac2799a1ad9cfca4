#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace ltlab {

/// Converts a time in seconds to a grid index. Throws AlignmentError unless
/// `seconds` is an integer multiple of dt (relative slack 1e-9 of a step).
std::size_t to_steps(double seconds, double dt, std::string_view what);

/// Sorted, strictly increasing grid indices on a uniform grid of step dt.
class TimeGrid {
 public:
  TimeGrid(double dt, std::vector<std::size_t> indices);

  static TimeGrid from_seconds(double dt, std::span<const double> seconds);
  /// 0, stride, 2*stride, ... and always `last`.
  static TimeGrid strided(double dt, std::size_t last, std::size_t stride = 1);
  static TimeGrid single(double dt, std::size_t index) { return TimeGrid(dt, {index}); }

  double dt() const noexcept { return dt_; }
  std::span<const std::size_t> indices() const noexcept { return *indices_; }
  std::size_t size() const noexcept { return indices_->size(); }
  bool empty() const noexcept { return indices_->empty(); }
  std::size_t back() const noexcept { return indices_->back(); }
  double seconds(std::size_t k) const noexcept {
    return static_cast<double>((*indices_)[k]) * dt_;
  }
  std::vector<double> seconds() const;

  bool operator==(const TimeGrid& other) const noexcept;

 private:
  double dt_;
  // Shared so that curves on the same grid do not copy it.
  std::shared_ptr<const std::vector<std::size_t>> indices_;
};

/// Regularization window eps = steps * dt, steps >= 1.
struct Window {
  std::size_t steps;
  double dt;

  static Window from_seconds(double eps, double dt);
  double seconds() const noexcept { return static_cast<double>(steps) * dt; }
};

}  // namespace ltlab
