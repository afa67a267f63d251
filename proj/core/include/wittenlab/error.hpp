#pragma once

#include <stdexcept>
#include <string>

namespace wittenlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive numerical procedure failed to reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested problem size exceeds the configured resource cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace wittenlab
