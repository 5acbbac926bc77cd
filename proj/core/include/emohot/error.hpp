#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emohot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: empty vocabulary, bad grid, unknown label, alpha out of range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A coordinate or index fell outside the grid.
class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

/// A statistic was requested on too few observations.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Fatal input error. `line` is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

/// Failure to read or write a file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace emohot
