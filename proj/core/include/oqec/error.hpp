#pragma once

#include <stdexcept>
#include <string>

namespace oqec {

// Base for every error raised by the library. Callers that only need to
// distinguish "bad input" from "negative verdict" catch NotCorrectableError
// first and Error second.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (non-Hermitian eigen input,
// undeclared trace-decreasing channel, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NotAStateError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed interchange file. `field` is a JSON-pointer-ish path to the
// offending entry.
class InputError : public Error {
 public:
  InputError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NotCorrectableError : public Error {
 public:
  explicit NotCorrectableError(double residual)
      : Error("channel is not correctable on subsystem A (condition-b residual " +
              std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace oqec
