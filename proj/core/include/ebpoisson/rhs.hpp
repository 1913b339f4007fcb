#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ebpoisson/cases.hpp"
#include "ebpoisson/grid.hpp"

namespace ebp {

/// How right-hand-side values are produced at near-boundary nodes.
struct RhsMode {
  enum class Kind {
    Exact,               ///< b(x) at every node
    Sampled,             ///< cloud-in-cell deposition of in-domain particles
    Calibrated,          ///< Sampled, then divided by the uniform-b fraction δ̄
    ScaledLinearToQuad,  ///< exact b scaled by (θ₋+θ₊)/2; 1-D only
  };
  Kind kind = Kind::Exact;
  int level = 1;

  static RhsMode exact() { return {Kind::Exact, 1}; }
  static RhsMode sampled(int level) { return {Kind::Sampled, level}; }
  static RhsMode calibrated(int level) { return {Kind::Calibrated, level}; }
  static RhsMode scaled_linear_to_quad() { return {Kind::ScaledLinearToQuad, 1}; }

  std::string name() const;
};

/// Per-unknown RHS values. delta and delta_bar are NaN where not recorded.
struct RhsField {
  RhsMode mode;
  std::vector<double> values;
  std::vector<double> delta;      ///< b̄ / b (sampled modes, near-boundary nodes)
  std::vector<double> delta_bar;  ///< uniform-b deposition fraction
};

/// Result of depositing particles from the 2^D cells around a node.
struct Deposit {
  double weighted = 0.0;  ///< Σ w_k b_k over in-domain particles
  double fraction = 0.0;  ///< Σ w_k over in-domain particles (δ̄)
};

/// Cloud-in-cell deposition onto the node at `center`.
///
/// Each of the 2^D cells around the node is split into 2^(level-1)
/// subcells per axis with one particle at every subcell centre. Particles
/// strictly inside `geometry` contribute b_k·Π(1 - |Δx|/h) / 2^(D(level-1)).
/// Sums are compensated and follow a fixed enumeration order.
Deposit cic_deposit(const Point& center, const std::array<double, 3>& spacing,
                    const LevelSetGeometry& geometry, const PointFunction& b, int level);

/// Sampled b̄ at a near-boundary node; throws UsageError otherwise.
double sample_rhs(const NodeClassification& classification, const LevelSetGeometry& geometry,
                  std::size_t node, const PointFunction& b, int level);

/// δ̄: deposition fraction with b ≡ 1. Equals 1 when no particle is excluded.
double delta_sampled(const NodeClassification& classification, const LevelSetGeometry& geometry,
                     std::size_t node, int level);

/// Closed-form 1-D fraction for uniform b: -θ²/2 + θ + 1/2.
double delta_closed_1d(double theta);

/// Quadrature of the truncated 1-D deposition integral for a boundary at
/// node + θh on the right, divided by b(node). Adaptive Gauss-Kronrod to 1e-10.
double delta_integral_1d(const std::function<double(double)>& b, double node, double spacing,
                         double theta);

RhsField eval_exact(const TestCase& test_case, const NodeClassification& classification);

RhsField build_rhs(const TestCase& test_case, const NodeClassification& classification,
                   RhsMode mode);

}  // namespace ebp
