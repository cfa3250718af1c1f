#pragma once

#include <stdexcept>

namespace nct {

// Invalid arguments are reported with std::invalid_argument; the types below
// cover the remaining failure classes.

/// A result would exceed a configured size limit (polynomial degree, Fourier
/// support). Raised instead of silently truncating.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure did not reach its accuracy target.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed object failed its own invariant check.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nct
