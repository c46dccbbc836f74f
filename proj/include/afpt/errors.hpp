#pragma once

#include <stdexcept>
#include <string>

namespace afpt {

/// Malformed or out-of-contract input (unknown symbol, vertex not in window, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not follow one of the documented file or word grammars.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A configured budget (ball size, subgroup order, window size) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needed a vertex or distance that the finite window cannot certify.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace afpt
