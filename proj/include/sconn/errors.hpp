#pragma once

#include <stdexcept>
#include <string>

namespace sconn {

/// Malformed or invalid user input (surface files, slopes, configs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A documented precondition of an operation was violated by its arguments.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated distances were not stable enough to support the requested claim.
class StabilityError : public std::runtime_error {
 public:
  StabilityError(const std::string& what, std::string suggestion)
      : std::runtime_error(what), suggestion_(std::move(suggestion)) {}
  const std::string& suggestion() const { return suggestion_; }

 private:
  std::string suggestion_;
};

}  // namespace sconn
