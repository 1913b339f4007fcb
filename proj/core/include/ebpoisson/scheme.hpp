#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ebpoisson/cases.hpp"
#include "ebpoisson/grid.hpp"
#include "ebpoisson/rhs.hpp"

namespace ebp {

/// Near-boundary ghost treatment.
struct SchemeKind {
  enum class Variant { Linear, Quadratic };
  Variant variant = Variant::Linear;
  /// Quadratic only: use the linear ghost on axes where the node is trapped.
  bool fallback_enabled = true;

  static SchemeKind linear() { return {Variant::Linear, false}; }
  static SchemeKind quadratic(bool fallback = true) { return {Variant::Quadratic, fallback}; }
  bool is_linear() const { return variant == Variant::Linear; }
  std::string name() const { return is_linear() ? "linear" : "quadratic"; }
};

/// φᴳ = dirichlet·φ_D + (1 + self_delta)·φᵢ - φᵢ, i.e. the node's own
/// coefficient in the ghost is self_delta.
struct LinearGhost {
  double self_coeff_delta;
  double dirichlet_coeff;
};

/// φᴳ = dirichlet·φ_D + self·φᵢ + back·φᵢ₋₁.
struct QuadraticGhost {
  double dirichlet_coeff;
  double self_coeff;
  double back_coeff;
};

LinearGhost ghost_linear(double theta);
QuadraticGhost ghost_quadratic(double theta);

/// Discrete Laplacian over interior unknowns in CSR form.
///
/// Row r reads Σ_c A(r,c)·φ_c = b_r + rhs_boundary_r. Coefficients keep
/// their 1/h² scaling; rows are not normalised.
struct SparseSystem {
  std::size_t n_unknowns = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  std::vector<double> rhs_boundary;
  std::vector<std::size_t> node_of_unknown;
  bool symmetric = false;

  std::size_t fallback_count = 0;  ///< directions switched quadratic -> linear
  std::size_t trapped_count = 0;   ///< trapped directions assembled without fallback

  std::span<const std::size_t> row_cols(std::size_t r) const {
    return {cols.data() + row_ptr[r], row_ptr[r + 1] - row_ptr[r]};
  }
  std::span<const double> row_vals(std::size_t r) const {
    return {vals.data() + row_ptr[r], row_ptr[r + 1] - row_ptr[r]};
  }
  double coefficient(std::size_t r, std::size_t c) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Exact scan: every stored (r,c) has a stored (c,r) with identical value.
  bool is_exactly_symmetric() const;

  /// rhs + rhs_boundary.
  std::vector<double> rhs_vector(std::span<const double> rhs) const;

  /// MatrixMarket coordinate dump (1-based indices).
  void write_matrix_market(std::ostream& os) const;
};

/// Assemble the operator. Dirichlet data are evaluated at the cached
/// crossing points node + θ·h·e.
///
/// Quadratic directions whose back node is exterior (a trapped axis) use
/// the linear ghost when fallback is enabled. Without fallback the stencil is
/// applied as is: the exterior back node has no unknown and contributes zero.
SparseSystem assemble(const NodeClassification& classification, SchemeKind scheme,
                      const PointFunction& dirichlet);

struct AssembledProblem {
  SparseSystem system;
  std::vector<double> rhs_vector;
};

AssembledProblem assemble(const NodeClassification& classification, SchemeKind scheme,
                          const PointFunction& dirichlet, const RhsField& rhs);

/// Interface point reached from `node` along `dir` at fraction θ.
Point crossing_point(const Mesh& mesh, std::size_t node, SignedAxis dir, double theta);

}  // namespace ebp
