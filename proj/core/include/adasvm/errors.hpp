#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adasvm {

// Malformed input data. `line` is 1-based; 0 means "whole input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace adasvm
