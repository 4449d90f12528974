#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paradox {

/// Malformed input (file syntax, dangling names, out-of-range indices).
/// `line()` is 1-based, 0 when no line applies.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A lexer/parser failure in the ∈-language; `position()` is a 0-based byte offset.
class parse_error : public input_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : input_error("at " + std::to_string(position) + ": " + what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An exhaustive sweep or construction would exceed its configured cap.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation's precondition (non-disjoint family, non-surjective map, ...).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal contract violation, e.g. evaluating a formula with an unbound variable.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace paradox
