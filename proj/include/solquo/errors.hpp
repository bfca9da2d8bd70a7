#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solquo {

enum class ErrorKind {
  parse,
  invalid_presentation,
  invalid_epimorphism,
  ceiling,
  inconsistent,
  argument,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error; `position` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::parse,
              what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace solquo
