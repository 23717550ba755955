#pragma once

#include <stdexcept>
#include <string>

namespace chaoscalc {

/// Malformed arguments: bad orders, wrong lengths, unknown tags, non-centered data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested enumeration exceeds the configured cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A mathematical hypothesis of a criterion does not hold for the input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation has no meaning for the requested chaos kind.
class UnsupportedKind : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chaoscalc
