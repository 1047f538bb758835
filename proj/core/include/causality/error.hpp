#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causality {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid trace text. Carries the 1-based offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A mechanism was asked to replay a trace whose mode it does not support
/// (e.g. dotted version vectors on a trace without client/server roles).
class ModeError : public Error {
 public:
  using Error::Error;
};

}  // namespace causality
