#pragma once

#include <stdexcept>
#include <string>

namespace gfvc {

/// Argument outside the interval an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sampled integrand, kernel or Lagrangian returned NaN or infinity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called on an object of the wrong shape or mode.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Optimizer or root-finder gave up; the message carries the iterate.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gfvc
