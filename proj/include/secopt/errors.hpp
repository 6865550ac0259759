#pragma once

#include <stdexcept>
#include <string>

namespace secopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input vectors are (numerically) collinear where independence is required.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An iterative or closed-form computation produced an unusable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The requested constraint cannot be met by the scheme.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Not enough relays to satisfy a nulling constraint.
class InsufficientDofError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario or sweep file; `field` names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error("schema error at '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// An internal invariant broke (indicates a bug in a subsolver).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace secopt
