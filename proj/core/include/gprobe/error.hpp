#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gprobe {

// Base for all toolkit errors. Anything derived from DataError is a
// user/data problem (CLI exit 1); ParseError in strict mode maps to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Non-finite values during optimization.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace gprobe
