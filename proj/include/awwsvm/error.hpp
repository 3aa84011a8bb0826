#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awwsvm {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed LIBSVM input. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A hyperplane whose normal vector is zero has no defined distance.
class DegenerateModel : public Error {
public:
  using Error::Error;
};

class TrainingError : public Error {
public:
  using Error::Error;
};

}  // namespace awwsvm
