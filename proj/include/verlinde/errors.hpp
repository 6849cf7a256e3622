#pragma once

#include <stdexcept>
#include <string>

namespace verlinde {

/// Input violates a documented precondition (bad rank, non-coprime degree,
/// weight outside the chamber, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity that must be an exact integer is not. Carries the offending
/// value in printable form.
class IntegralityError : public std::runtime_error {
 public:
  IntegralityError(const std::string& what, std::string value)
      : std::runtime_error(what + ": " + value), value_(std::move(value)) {}
  const std::string& value() const noexcept { return value_; }

 private:
  std::string value_;
};

/// A truncated series was asked for a coefficient outside its known window.
/// Retry with a larger expansion order.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace verlinde
