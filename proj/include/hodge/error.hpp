#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape (ambient dimension, matrix size, degree).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant of the input does not hold (d∘d ≠ 0,
/// non-commuting square, bad label). The message names the offending cell.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed document or literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hodge
