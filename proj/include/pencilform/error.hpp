#pragma once

#include <stdexcept>
#include <string>

namespace pencilform {

// Process exit codes used by the command-line front end. Each exception
// type below maps onto exactly one of them.
enum class ExitCode : int {
  ok = 0,
  validation = 2,
  unsupported_characteristic = 3,
  resource_guard = 4,
  internal_verification = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual ExitCode code() const noexcept = 0;
  [[nodiscard]] virtual const char* kind() const noexcept = 0;
};

/// Input violates a documented precondition (bad shape, not skew, not monic, ...).
class ContractError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::validation; }
  [[nodiscard]] const char* kind() const noexcept override { return "validation"; }
};

class SingularMatrixError : public ContractError {
 public:
  using ContractError::ContractError;
  [[nodiscard]] const char* kind() const noexcept override { return "singular"; }
};

/// Classification in characteristic 2 is not supported; only raw arithmetic is.
class UnsupportedCharacteristic : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override {
    return ExitCode::unsupported_characteristic;
  }
  [[nodiscard]] const char* kind() const noexcept override { return "unsupported_characteristic"; }
};

class ResourceGuardError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::resource_guard; }
  [[nodiscard]] const char* kind() const noexcept override { return "resource_guard"; }
};

/// A self-check failed. Signals a bug, never a property of the input.
class VerificationError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override {
    return ExitCode::internal_verification;
  }
  [[nodiscard]] const char* kind() const noexcept override { return "internal_verification"; }
};

}  // namespace pencilform
