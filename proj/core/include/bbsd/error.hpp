#pragma once

#include <stdexcept>
#include <string>

namespace bbsd {

/// Operand shapes do not fit the operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A covariance that has to be inverted is numerically singular.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number) {}

  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// Scenario configuration is missing keys or violates its invariants.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbsd
