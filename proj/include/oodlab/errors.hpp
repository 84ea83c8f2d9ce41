#pragma once

#include <stdexcept>
#include <string>

namespace oodlab {

// Base error. `code` is a stable machine-readable tag; the CLI maps error
// categories to exit codes (validation -> 2, size cap -> 3, precondition -> 4).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Malformed inputs: bad files, bad parameters, violated type invariants.
class ValidationError : public Error {
 public:
  ValidationError(std::string code, const std::string& what)
      : Error(std::move(code), what) {}
  explicit ValidationError(const std::string& what)
      : Error("validation", what) {}
};

// A combinatorial search was asked to exceed its configured cap or budget.
class SizeCapError : public Error {
 public:
  explicit SizeCapError(const std::string& what) : Error("size-cap", what) {}
};

// An experiment's matching contract does not hold for the supplied inputs.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error("precondition", what) {}
};

}  // namespace oodlab
