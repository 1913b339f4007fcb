#include "ebpoisson/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ebpoisson/errors.hpp"

namespace ebp {

void ExperimentConfig::validate() const {
  const auto names = case_names();
  if (std::find(names.begin(), names.end(), case_name) == names.end()) {
    throw UsageError("unknown case '" + case_name + "'");
  }
  if (nodes.empty()) throw UsageError("at least one mesh size is required");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 5) throw UsageError("mesh sizes must be at least 5 nodes per axis");
    if (i > 0 && nodes[i] <= nodes[i - 1]) {
      throw UsageError("mesh sizes must be strictly increasing");
    }
  }
  const int dim = make_case().dimension;
  if (rhs.kind == RhsMode::Kind::ScaledLinearToQuad && dim != 1) {
    throw UsageError("scaled1d RHS mode is only defined for the 1-D case");
  }
  if (rhs.kind == RhsMode::Kind::Sampled || rhs.kind == RhsMode::Kind::Calibrated) {
    if (rhs.level < 1 || rhs.level > 20) throw UsageError("sampling level must lie in 1..20");
  }
  const double tol = solver.relative_residual_tolerance;
  if (!(tol > 0.0 && tol <= 1e-6)) throw UsageError("solver tolerance must lie in (0, 1e-6]");
  if (solver.method == SolveOptions::Method::ConjugateGradient && !scheme.is_linear()) {
    throw UsageError("conjugate gradient requires the linear scheme");
  }
  if (case_name == "case1d" && !(interval_left < interval_right)) {
    throw UsageError("case1d interface positions must satisfy left < right");
  }
}

TestCase ExperimentConfig::make_case() const {
  if (case_name == "case1d") return case_1d(interval_left, interval_right);
  return case_by_name(case_name);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int nodes) {
  return run_experiment(config, nodes, nullptr);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int nodes,
                                std::optional<NodeClassification>* classification_out) {
  const TestCase tc = config.make_case();
  const Mesh mesh = Mesh::box(tc.dimension, tc.domain_lo, tc.domain_hi, nodes);
  NodeClassification cls = classify(mesh, tc.geometry);

  ExperimentResult out;
  out.nodes = nodes;
  out.n_interior = cls.num_interior();
  out.n_near_boundary = cls.num_near_boundary();
  out.n_trapped_nodes = cls.num_trapped();
  out.isolated_reclassified = cls.isolated_reclassified();

  out.rhs = build_rhs(tc, cls, config.rhs);
  const AssembledProblem problem = assemble(cls, config.scheme, tc.exact_phi, out.rhs);
  out.fallback_count = problem.system.fallback_count;
  out.trapped_count = problem.system.trapped_count;
  if (problem.system.trapped_count > 0) {
    out.warnings.push_back(std::to_string(problem.system.trapped_count) +
                           " trapped directions assembled with the quadratic stencil and no "
                           "fallback; accuracy will degrade");
  }
  if (out.isolated_reclassified > 0) {
    out.warnings.push_back(std::to_string(out.isolated_reclassified) +
                           " isolated interior nodes reclassified as exterior");
  }

  out.solution = solve(problem.system, problem.rhs_vector, config.solver, tc.dimension);
  const std::vector<double> exact = exact_on_unknowns(tc, cls);
  out.report = error_report(out.solution.phi, exact, mesh, truncation_field(problem, exact));
  if (classification_out) *classification_out = std::move(cls);
  return out;
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config) {
  config.validate();
  if (config.nodes.size() < 2) throw UsageError("convergence needs at least two mesh sizes");
  std::vector<ConvergenceRow> rows;
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  for (const int n : config.nodes) {
    const ExperimentResult r = run_experiment(config, n);
    ConvergenceRow row{n, r.report.spacing[0], r.report.l1_normalized, r.report.l_infinity, kNaN, kNaN};
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      if (prev.l1 > 0.0 && row.l1 > 0.0) {
        row.l1_order = order_estimate(prev.l1, row.l1, prev.spacing, row.spacing);
      }
      if (prev.linf > 0.0 && row.linf > 0.0) {
        row.linf_order = order_estimate(prev.linf, row.linf, prev.spacing, row.spacing);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

Decomposition1DRun run_decomposition_1d(const ExperimentConfig& config, int nodes) {
  if (config.case_name != "case1d") throw UsageError("decomposition requires case1d");
  std::optional<NodeClassification> cls;
  const ExperimentResult r = run_experiment(config, nodes, &cls);
  const auto& interior = cls->interior_nodes();
  const double theta_left = cls->theta(interior.front(), {0, -1}).value_or(1.0);
  const double theta_right = cls->theta(interior.back(), {0, +1}).value_or(1.0);
  Decomposition1DRun run;
  run.decomposition =
      decompose_1d(r.report.tau, theta_left, theta_right, config.scheme, config.make_case());
  run.xi = r.report.xi;
  return run;
}

}  // namespace ebp
