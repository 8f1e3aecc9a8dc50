#pragma once

#include <stdexcept>
#include <string>

namespace majorant {

// Input had no nonzero coefficients where at least one is required.
class EmptyInputError : public std::invalid_argument {
 public:
  explicit EmptyInputError(const std::string& what) : std::invalid_argument(what) {}
};

// A structured input file failed validation; `field()` names the offender.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& what)
      : std::runtime_error(what + " (field: " + field + ")"), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Combinatorial enumeration would exceed the configured budget.
class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  explicit EnumerationBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Iterative search exhausted its sweep/iteration budget without settling.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency identity between two computation routes failed.
class ScalingMismatchError : public std::runtime_error {
 public:
  explicit ScalingMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an oracle/check was violated by its inputs.
class PreconditionViolated : public std::invalid_argument {
 public:
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace majorant
