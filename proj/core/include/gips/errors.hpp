#pragma once

#include <stdexcept>
#include <string>

namespace gips {

/// Bad user input: malformed text, out-of-range indices, invalid hyperparameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric precondition failed at evaluation time (non positive definite
/// matrix, divergent gamma argument, nonexistent MLE).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericError {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : NumericError(what + ": matrix is not positive definite") {}
};

/// Raised when an internal consistency check fails (e.g. block leakage after
/// conjugation). Indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gips
