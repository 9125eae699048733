#pragma once

#include <stdexcept>
#include <string>

namespace ppcurve {

// Argument outside the domain of an operation (u not in (0,1), non-monotone input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Model parameters that violate a family's invariants.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation requested on an object whose state does not support it
// (density of a curve that is not absolutely continuous, ...).
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or degenerate input data (CSV rows, constant columns).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppcurve
