#pragma once

#include <stdexcept>
#include <string>

namespace xprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (bad payload, empty set,
/// non-unit vector, shape mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured element-count cap.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine (eigensolver) failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An operator expected to lie in the crossed-product span does not; the
/// message names the offending translation.
class NotInCrossedProduct : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace xprod
