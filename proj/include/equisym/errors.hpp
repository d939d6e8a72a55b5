#pragma once

#include <stdexcept>
#include <string>

namespace equisym {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Payload kind, dimension or group mismatch between arguments.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value breaks a type invariant (non-orthogonal matrix, non-bijective permutation, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this group, mode or homomorphism.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A subgroup inclusion that is not injective.
class InvalidInclusion : public Error {
 public:
  using Error::Error;
};

/// Input map or kernel fails the equivariance it is declared to have.
class IllTypedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace equisym
