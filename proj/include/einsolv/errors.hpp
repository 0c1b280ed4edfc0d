#pragma once

#include <stdexcept>
#include <string>

namespace einsolv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, dimension mismatch, schema violations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but violates an operation's mathematical hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its stated tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An Einstein construction finished but its verification failed.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace einsolv
