#pragma once

#include <stdexcept>
#include <string>

namespace wss {

/// Invalid input value or index handed to a library function.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// The graph or profile lacks a structural property an operation needs
/// (connectedness, positive edge boundary, ...).
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition of a criterion is not met
/// (nonzero killing for a c = 0 criterion, non birth-death input, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed graph or profile text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace wss
