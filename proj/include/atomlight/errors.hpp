#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atomlight {

/// Invalid or inconsistent input configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or solver failure during a computation (CLI exit code 1).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  NumericError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_ = 0;
};

/// Output directory cannot be created or written (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a closed-form quantity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace atomlight
