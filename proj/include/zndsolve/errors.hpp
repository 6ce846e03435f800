#pragma once

#include <stdexcept>
#include <string>

namespace znd {

/// Operand or provider dimensions disagree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation is outside what the object supports
/// (no theoretical solution, complex gain on the real-field model, ...).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configuration violates one or more of its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel could not produce a result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace znd
