#pragma once

#include <stdexcept>
#include <string>

namespace mpmcs {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejects bad arguments and malformed in-memory objects.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Rejects nonconforming structured text (tree JSON, WCNF, solution files).
// Carries the 1-based line number where the problem was detected, 0 if unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Raised when a request exceeds a stated capacity bound (exhaustive
// enumeration limits, integer weight space).
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpmcs
