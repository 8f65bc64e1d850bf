#pragma once

#include <stdexcept>

namespace fusys {

/// Raised when an internal consistency assertion fails.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input that cannot be turned into a valid object (bad JSON, bad references,
/// violated preconditions of a request).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fusys
