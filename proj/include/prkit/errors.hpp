#ifndef PRKIT_ERRORS_HPP
#define PRKIT_ERRORS_HPP

#include <stdexcept>

namespace prkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors or matrices of incompatible shapes, or out-of-range indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (rationals, matrix files, certificates).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search was asked to go beyond its configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain of a function or coloring.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A registry lookup (system id, coloring id, property id) failed.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

}  // namespace prkit

#endif  // PRKIT_ERRORS_HPP
