#pragma once

#include <stdexcept>
#include <string>

namespace slepian {

// Bad argument to a documented precondition.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A result whose true value exceeds the representable double range.
struct OverflowError : std::range_error {
  using std::range_error::range_error;
};

// Adaptive quadrature exhausted its subdivision depth. Carries the worst
// remaining subinterval so callers can report the failing point.
struct ConvergenceError : std::runtime_error {
  double lo;
  double hi;
  double error_estimate;

  ConvergenceError(double lo_, double hi_, double err_)
      : std::runtime_error("quadrature did not converge on [" +
                           std::to_string(lo_) + ", " + std::to_string(hi_) +
                           "], error estimate " + std::to_string(err_)),
        lo(lo_),
        hi(hi_),
        error_estimate(err_) {}
};

// A request whose total simulation work exceeds the hard budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace slepian
