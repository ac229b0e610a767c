#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cforge {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file, bad expression, invalid partition, unknown name.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Structural violation of a domain type (partition does not cover the
/// universe, payoff vector of the wrong size, ...).
class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

/// A size limit was exceeded (too many players for exact Shapley, too many
/// partitions to enumerate).
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// A numerical procedure failed; `estimate()` carries the best value reached.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Evaluation outside a function's domain (ln of a non-positive value,
/// fractional power of a negative base, ...).
class DomainError : public NumericalError {
 public:
  explicit DomainError(const std::string& what)
      : NumericalError(what, std::numeric_limits<double>::quiet_NaN()) {}
};

}  // namespace cforge
