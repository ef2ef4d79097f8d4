#pragma once

#include <stdexcept>
#include <string>

namespace nary {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument shapes (dimensions, arities, tuple lengths) do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A construction was called on inputs that do not satisfy its hypotheses,
/// e.g. an algebra that has not been certified or a failed operator check.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised by exact inversion; carries the rank that was found.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, int rank) : Error(what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

/// Malformed interchange data. `location` is a JSON-pointer-like path.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : Error(location + ": " + what), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// An exhaustive search would exceed its configured candidate cap.
class SearchCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace nary
