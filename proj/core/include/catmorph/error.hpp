#pragma once

#include <stdexcept>
#include <string>

namespace catmorph {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument that can never be valid (category out of
/// range, malformed structuring element, inconsistent shapes, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data violates an invariant of its type (off-simplex pixel,
/// non-positive Dirichlet parameter, corrupt file, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace catmorph
