#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gb {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input has a shape the algorithms do not support (odd n, m > n, wrong cube side).
struct ShapeError : Error {
  using Error::Error;
};

// Malformed text input. Positions are 1-based; 0 means "not applicable".
struct ParseError : Error {
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(what), line(line), column(column) {}
  int line;
  int column;
};

// An operation was called outside its stated precondition.
struct DomainError : Error {
  using Error::Error;
};

// A postcondition that is guaranteed by construction failed. Always a bug.
struct InternalError : Error {
  using Error::Error;
};

// An enumeration or search exceeded its configured budget.
struct ResourceError : Error {
  ResourceError(const std::string& what, std::uint64_t required = 0)
      : Error(what), required(required) {}
  std::uint64_t required;
};

}  // namespace gb
