#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drstokes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class IncompleteTrace : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// Raised when the rewrite engine runs out of its step budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t steps)
      : Error("rewrite budget exceeded after " + std::to_string(steps) + " steps"), steps_(steps) {}
  std::size_t steps() const noexcept { return steps_; }

 private:
  std::size_t steps_;
};

/// Operator-word parse failure; `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace drstokes
