#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pegmachine {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed grammar, machine, or spec text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-typed input that violates a structural invariant (duplicate rule,
/// up-move with a push, non-CNF body, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pegmachine
