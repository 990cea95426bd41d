#pragma once

#include <stdexcept>
#include <string>

namespace twocopy {

// Base class for all toolkit errors. `kind()` is a stable machine-readable
// tag that the CLI emits in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error("argument", message) {}
};

class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& message)
      : Error("resource-limit", message) {}
};

class InvalidStateError : public Error {
 public:
  explicit InvalidStateError(const std::string& message)
      : Error("invalid-state", message) {}
};

class NonPhysicalCoefficientsError : public Error {
 public:
  explicit NonPhysicalCoefficientsError(const std::string& message)
      : Error("non-physical-coefficients", message) {}
};

class InvalidBlochError : public Error {
 public:
  explicit InvalidBlochError(const std::string& message)
      : Error("invalid-bloch", message) {}
};

class InvalidPovmError : public Error {
 public:
  InvalidPovmError(const std::string& message, int element_index,
                   double offending_value)
      : Error("invalid-povm", message),
        element_index_(element_index),
        offending_value_(offending_value) {}

  int element_index() const { return element_index_; }
  double offending_value() const { return offending_value_; }

 private:
  int element_index_;
  double offending_value_;
};

class UnrecoverableCoefficientError : public Error {
 public:
  explicit UnrecoverableCoefficientError(const std::string& message)
      : Error("unrecoverable-coefficient", message) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error("precondition", message) {}
};

}  // namespace twocopy
