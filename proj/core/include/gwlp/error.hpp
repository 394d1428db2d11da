#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gwlp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that are individually valid but do not fit together
/// (mismatched factor structures, out-of-range indices, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a configured size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must always hold was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gwlp
