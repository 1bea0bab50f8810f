#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

/// Argument outside the mathematical domain (n = 0, zeta below 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer result does not fit the declared width.
class RangeError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Caller broke a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a declared size or memory limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crlab
