#pragma once

#include <stdexcept>
#include <string>

namespace spreadkit {

/// Process exit codes shared by the library error types and the CLI.
enum class ExitCode : int {
  ok = 0,
  verification_failed = 1,
  input_error = 2,
  budget_refusal = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, std::string name, const std::string& what)
      : std::runtime_error(what), code_(code), name_(std::move(name)) {}

  ExitCode code() const noexcept { return code_; }
  /// Short machine-readable identifier, e.g. "degree_mismatch".
  const std::string& name() const noexcept { return name_; }

 private:
  ExitCode code_;
  std::string name_;
};

/// Malformed or out-of-contract input (parse errors, wrong degree, non-members).
class InputError : public Error {
 public:
  InputError(std::string name, const std::string& what)
      : Error(ExitCode::input_error, std::move(name), what) {}
};

/// A computation refused because it would exceed a configured budget.
class BudgetError : public Error {
 public:
  BudgetError(std::string name, const std::string& what)
      : Error(ExitCode::budget_refusal, std::move(name), what) {}
};

/// A structural invariant or verification check failed.
class VerificationError : public Error {
 public:
  VerificationError(std::string name, const std::string& what)
      : Error(ExitCode::verification_failed, std::move(name), what) {}
};

}  // namespace spreadkit
