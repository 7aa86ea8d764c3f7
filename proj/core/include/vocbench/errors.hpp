#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vocbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The data violates a domain invariant: out-of-range confidence, empty
/// dataset, inconsistent use case, and so on.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A file or argument could not be parsed. `line()` is 1-based, 0 when the
/// error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vocbench
