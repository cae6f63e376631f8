#pragma once

#include <stdexcept>
#include <string>

namespace oddcycle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A rotation system that does not match its graph.
class MalformedEmbedding : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input that violates its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Some vertex of S has three or more neighbours in B.
class NotATumorGraph : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. These are never swallowed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The enumeration node budget ran out.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace oddcycle
