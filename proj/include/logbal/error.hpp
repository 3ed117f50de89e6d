#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logbal {

using Index = long;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero and other exact-arithmetic failures.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A rational function was evaluated at (or required to be regular on a tail
/// containing) an integer zero of its denominator.
class PoleError : public ArithmeticError {
 public:
  PoleError(Index at, const std::string& what)
      : ArithmeticError(what + " (pole at n = " + std::to_string(at) + ")"), at_(at) {}
  Index at() const noexcept { return at_; }

 private:
  Index at_;
};

/// Malformed recurrence text. Offsets are 0-based bytes, line/column 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column, std::string message,
             std::string expected = {})
      : Error(format(line, column, message, expected)),
        offset_(offset),
        line_(line),
        column_(column),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message,
                            const std::string& expected) {
    std::string s = "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                    ": " + message;
    if (!expected.empty()) s += " (expected " + expected + ")";
    return s;
  }

  std::size_t offset_, line_, column_;
  std::string message_, expected_;
};

/// Structurally invalid recurrence (order, initial values, elimination).
class RecurrenceError : public Error {
 public:
  using Error::Error;
};

/// Analysis preconditions not met (short window, nonpositive terms, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace logbal
