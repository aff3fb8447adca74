#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sheafwb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed site, sheaf or formula text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(decorate(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string decorate(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return what;
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// A precondition on the arguments was violated (unknown node, open not contained in ambient, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured size bound.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// Evaluation hit an ill-posed input: unbound variable, undefined function value, ...
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sheafwb
