#pragma once

#include <stdexcept>
#include <string>

namespace shedkit {

// All library failures derive from Error so callers (the CLI in particular)
// can map them to exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A point or ray that falls outside the support of the fan it is applied to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Subdividing at a ray that is already a ray of the fan.
class IdempotenceError : public Error {
 public:
  using Error::Error;
};

/// Zero or several candidate G-points where exactly one was expected.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A fan whose cones do not meet along common faces, or a malformed cone.
class InvalidFanError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's stated domain (e.g. q < 2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A mechanically checked claim about the moduli fans turned out false.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

class CorrespondenceFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace shedkit
