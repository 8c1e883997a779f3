#pragma once

#include <stdexcept>
#include <string>

namespace hsm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: spec files, matrix files, labels.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but violates a structural requirement (not a group, not a
/// projection, not normal, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested operation is outside what the library computes.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsm
