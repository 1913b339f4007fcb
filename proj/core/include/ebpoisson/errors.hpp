#pragma once

#include <stdexcept>
#include <string>

namespace ebp {

/// Caller violated a documented precondition (bad θ, dimension mismatch, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A level set behaved inconsistently, e.g. no sign change across a cut edge.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The discrete operator could not be built for the requested scheme.
class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solve hit its cap; carries the best residual reached.
class NonConvergenceError : public SolverError {
 public:
  NonConvergenceError(const std::string& what, double best_residual)
      : SolverError(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace ebp
