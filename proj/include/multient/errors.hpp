#pragma once

#include <stdexcept>
#include <string>

namespace multient {

// Malformed or out-of-domain input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure or broken internal consistency. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No polygon solver start converged.
class SolverError : public NumericError {
 public:
  SolverError(const std::string& what, double best_residual)
      : NumericError(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace multient
