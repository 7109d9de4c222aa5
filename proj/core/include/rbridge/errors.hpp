#pragma once

#include <stdexcept>
#include <string>

namespace rbridge {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, out-of-range parameters, broken invariants.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Unreadable or unparsable file content.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A linear system that should be positive definite or invertible is not.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Restriction rows that cannot all hold, e.g. after pruning leaves a row
/// with no free columns but a nonzero right-hand side.
class InfeasibleRestriction : public Error {
 public:
  using Error::Error;
};

}  // namespace rbridge
