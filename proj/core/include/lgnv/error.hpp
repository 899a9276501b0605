#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgnv {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed netlist, schema, CSV or literal text. Carries the byte offset
/// and 1-based line of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ", offset " +
              std::to_string(offset) + ")"),
        offset_(offset),
        line_(line) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

/// A file could not be opened, read or written.
class FileError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input (bad dimensions, ill-formed bits, width mismatch).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration refused because the instance exceeds the guard.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// Solver missing, crashed or produced output we cannot interpret.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A decoded model failed its concrete recheck. Always an encoding bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgnv
