#pragma once

#include <stdexcept>
#include <string>

namespace tw {

/// Base class of every error thrown by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's contract (unbound variable, mixed parameters, bad flag).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (frame files, set displays, term syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Requested object exceeds a configured size budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Query that cannot be decided exactly on the given carrier.
class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

/// Missing or invalid configuration (e.g. no composition scheme).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. non-total algebra).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tw
