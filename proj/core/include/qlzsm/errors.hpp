#pragma once

#include <stdexcept>
#include <string>

namespace qlzsm {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, malformed configuration, broken invariants of inputs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An argument outside the mathematical domain of an operation
// (time outside the pulse window, contour level outside (0,1), ...).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A pole of an analytic expression was hit.
class SingularityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The adaptive integrator could not make progress. Carries the last time
// for which a valid state was produced.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

// Requested a representation the data does not carry
// (e.g. Majorana stars of a density-matrix trajectory).
class UnsupportedRepresentationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlzsm
