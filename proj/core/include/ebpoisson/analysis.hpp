#pragma once

#include <array>
#include <span>
#include <vector>

#include "ebpoisson/cases.hpp"
#include "ebpoisson/grid.hpp"
#include "ebpoisson/rhs.hpp"
#include "ebpoisson/scheme.hpp"
#include "ebpoisson/solver.hpp"

namespace ebp {

/// Exact solution sampled at the interior unknowns.
std::vector<double> exact_on_unknowns(const TestCase& test_case,
                                      const NodeClassification& classification);

/// τ = (b + boundary terms) - A φᵉ for an assembled problem whose Dirichlet
/// data came from the exact solution.
std::vector<double> truncation_field(const AssembledProblem& problem,
                                     std::span<const double> exact_phi);

/// Convenience: assemble with Dirichlet data from exact φ, then evaluate τ.
std::vector<double> truncation_field(const TestCase& test_case,
                                     const NodeClassification& classification, SchemeKind scheme,
                                     const RhsField& rhs);

struct ErrorReport {
  std::vector<double> xi;   ///< φ - φᵉ per unknown
  std::vector<double> tau;  ///< may be empty if not requested
  double l1_normalized = 0.0;
  double l_infinity = 0.0;
  std::array<double, 3> spacing{0.0, 0.0, 0.0};
};

ErrorReport error_report(std::span<const double> phi, std::span<const double> exact_phi,
                         const Mesh& mesh, std::vector<double> tau = {});

/// p = ln(L_coarse / L_fine) / ln(Δ_coarse / Δ_fine).
double order_estimate(double norm_coarse, double norm_fine, double delta_coarse, double delta_fine);

/// Explicit 1-D error decomposition on nodes 1..N-1 between two interfaces.
struct Decomposition1D {
  std::size_t intervals = 0;  ///< N
  double spacing = 0.0;
  double theta_left = 1.0;
  double theta_right = 1.0;
  SchemeKind scheme;
  std::vector<double> x;
  std::vector<double> xi_formula;  ///< closed-form ξ from all τ
  std::vector<double> xi_left;
  std::vector<double> xi_right;
  std::vector<double> xi_interior;

  std::vector<double> component_sum() const;
};

/// Decompose using the interval geometry of a 1-D case. `taus` holds
/// τ₁..τ_{N-1}; the spacing follows from the interface positions and θs.
Decomposition1D decompose_1d(std::span<const double> taus, double theta_left, double theta_right,
                             SchemeKind scheme, const TestCase& test_case);

/// Closed-form interior contribution at x for interfaces xl < xr.
double interior_contribution_1d(const TestCase& test_case, double xl, double xr, double x,
                                double spacing);

struct SweepPoint {
  double theta = 0.0;
  double magnitude = 0.0;  ///< max |ξᴸ| over the nodes
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double argmax_theta = 0.0;
};

/// Parameters of the 1-D boundary-error sweep: a fixed first node x₁ with
/// the left interface at x₁ - θΔ and the right interface on a node.
struct SweepSetup {
  int nodes = 1601;
  double first_node = -0.3125;
  double right_interface = 0.3125;
  int sampling_level = 16;
};

/// For each θ, solves the 1-D problem with θ_L = θ and θ_R = 1 and records
/// the magnitude of the response to τ₁ alone.
SweepResult boundary_error_sweep(SchemeKind scheme, RhsMode rhs, std::span<const double> thetas,
                                 const SweepSetup& setup = {});

struct ContourRow {
  double theta_x = 0.0;
  double theta_y = 0.0;
  double delta_bar = 0.0;
  double lin_x = 0.0;
  double lin_y = 0.0;
  double lin_sum = 0.0;
  double lq_x = 0.0;
  double lq_y = 0.0;
  double lq_sum = 0.0;
};

/// Leading-coefficient comparisons over θ_k = k/resolution, k = 1..resolution.
///
/// lin_*: |coefficient with sampled RHS| - |coefficient with exact RHS| for
/// the linear scheme. lq_*: |linear, sampled| - |quadratic, sampled|.
/// Negative values favour the first scheme of the pair.
std::vector<ContourRow> leading_coeff_contours(int resolution, int sampling_level);

}  // namespace ebp
