#pragma once

#include <stdexcept>
#include <string>

namespace kron {

// Base class for every error raised by the library. `code` is a short,
// stable identifier ("size_mismatch", "budget_exceeded", a stage or
// constraint name, ...) that the CLI surfaces in its JSON payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation would exceed its configured budget. Callers may catch this
// and fall back to a cheaper route (e.g. t-based reasoning instead of k).
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error("budget_exceeded", what) {}
};

// Raised by the reduction pipeline when a stage's invariant check fails.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : Error(stage, stage + ": " + what) {}
};

}  // namespace kron
