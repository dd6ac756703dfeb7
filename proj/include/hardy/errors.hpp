#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: wrong sizes, non-finite samples, points outside the disk,
/// out-of-range parameters or indices.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two poles of a tuple coincide.
class DegenerateTupleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace hardy
