#pragma once

#include <stdexcept>
#include <string>

namespace ltlab {

/// Bad argument value (non-positive step, empty input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time or window length that is not an exact multiple of the grid step.
class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The path does not extend far enough for the requested evaluation.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A configuration or model description that fails its invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltlab
