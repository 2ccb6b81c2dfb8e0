#pragma once

#include <stdexcept>
#include <string>

namespace ramanforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or parsed (CLI exit code 2).
class IoError : public Error {
 public:
  using Error::Error;
};

/// External denoiser failed or produced unusable output (CLI exit code 3).
class ExternalToolError : public Error {
 public:
  using Error::Error;
};

/// Raised when a Raman component has no positive value, so no scaling exists.
class FlatRamanError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Active-set iteration cap reached.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramanforge
