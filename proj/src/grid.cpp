#include "ltlab/grid.hpp"

#include <cmath>
#include <string>

#include "ltlab/error.hpp"

namespace ltlab {

std::size_t to_steps(double seconds, double dt, std::string_view what) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("grid step must be positive");
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw InvalidArgument(std::string(what) + " must be finite and nonnegative");
  }
  const double ratio = seconds / dt;
  const double rounded = std::nearbyint(ratio);
  if (std::fabs(ratio - rounded) > 1e-9) {
    throw AlignmentError(std::string(what) + " = " + std::to_string(seconds) +
                         " is not an integer multiple of dt = " + std::to_string(dt));
  }
  return static_cast<std::size_t>(rounded);
}

TimeGrid::TimeGrid(double dt, std::vector<std::size_t> indices) : dt_(dt) {
  if (!(dt_ > 0.0)) throw InvalidArgument("grid step must be positive");
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] <= indices[k - 1]) {
      throw InvalidArgument("time grid must be strictly increasing");
    }
  }
  indices_ = std::make_shared<const std::vector<std::size_t>>(std::move(indices));
}

bool TimeGrid::operator==(const TimeGrid& other) const noexcept {
  return dt_ == other.dt_ && (indices_ == other.indices_ || *indices_ == *other.indices_);
}

TimeGrid TimeGrid::from_seconds(double dt, std::span<const double> seconds) {
  std::vector<std::size_t> indices;
  indices.reserve(seconds.size());
  for (double t : seconds) indices.push_back(to_steps(t, dt, "t"));
  return TimeGrid(dt, std::move(indices));
}

TimeGrid TimeGrid::strided(double dt, std::size_t last, std::size_t stride) {
  if (stride == 0) throw InvalidArgument("stride must be positive");
  std::vector<std::size_t> indices;
  indices.reserve(last / stride + 2);
  for (std::size_t k = 0; k <= last; k += stride) indices.push_back(k);
  if (indices.back() != last) indices.push_back(last);
  return TimeGrid(dt, std::move(indices));
}

std::vector<double> TimeGrid::seconds() const {
  std::vector<double> out(indices_->size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = seconds(k);
  return out;
}

Window Window::from_seconds(double eps, double dt) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const auto steps = to_steps(eps, dt, "eps");
  if (steps == 0) throw AlignmentError("eps is smaller than one grid step");
  return {steps, dt};
}

}  // namespace ltlab
