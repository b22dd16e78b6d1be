#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackres {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial or field text; carries the 0-based column of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at column " + std::to_string(position + 1) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// The reduced curve is smooth at the point: f is a unit times a power of a regular parameter.
class PurePowerError : public Error {
 public:
  using Error::Error;
};

// A configured iteration or depth bound was exceeded. Termination is guaranteed by
// theory, so hitting one of these indicates a bug.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace stackres
