#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radarint {

/// Input or configuration violates a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scenario cannot host the requested number of vehicles.
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed text input. Carries the 1-based line number of the offending row.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radarint
