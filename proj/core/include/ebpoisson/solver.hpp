#pragma once

#include <span>
#include <string>
#include <vector>

#include "ebpoisson/scheme.hpp"

namespace ebp {

struct SolveOptions {
  enum class Method {
    Auto,  ///< banded LU for 1-D/2-D, CG or BiCGStab for 3-D
    DirectDense,
    DirectBanded,
    ConjugateGradient,
    StabilizedBiCG,
  };
  Method method = Method::Auto;
  double relative_residual_tolerance = 1e-13;
  std::size_t max_iterations = 0;  ///< 0: 20·n, at least 1000
  bool verbose = false;
};

std::string method_name(SolveOptions::Method method);
SolveOptions::Method parse_method(const std::string& name);

struct Solution {
  std::vector<double> phi;
  double relative_residual = 0.0;  ///< ‖Aφ - b‖₂ / ‖b‖₂, recomputed after the solve
  std::size_t iterations = 0;      ///< Krylov iterations or refinement sweeps
  SolveOptions::Method method = SolveOptions::Method::Auto;
  std::string note;
};

/// Resolve Method::Auto for a given problem dimension.
SolveOptions::Method resolve_method(SolveOptions::Method method, int dimension, bool symmetric);

/// Solve A φ = b. Direct methods use partial (row) pivoting; CG needs a
/// symmetric system.
///
/// Throws SolverError on singular or indefinite systems and
/// NonConvergenceError when the iteration cap is hit.
Solution solve(const SparseSystem& system, std::span<const double> rhs, const SolveOptions& options,
               int dimension = 2);

double relative_residual(const SparseSystem& system, std::span<const double> phi,
                         std::span<const double> rhs);

}  // namespace ebp
