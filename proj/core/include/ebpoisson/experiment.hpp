#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebpoisson/analysis.hpp"
#include "ebpoisson/cases.hpp"
#include "ebpoisson/grid.hpp"
#include "ebpoisson/rhs.hpp"
#include "ebpoisson/scheme.hpp"
#include "ebpoisson/solver.hpp"

namespace ebp {

/// Everything needed to run one solve of a benchmark case.
struct ExperimentConfig {
  std::string case_name = "case2d";
  SchemeKind scheme = SchemeKind::linear();
  RhsMode rhs = RhsMode::exact();
  std::vector<int> nodes{41};
  SolveOptions solver;
  /// case1d only: interface positions.
  double interval_left = -0.3156;
  double interval_right = 0.3156;

  /// Throws UsageError on an invalid combination.
  void validate() const;
  TestCase make_case() const;
};

struct ExperimentResult {
  int nodes = 0;
  std::size_t n_interior = 0;
  std::size_t n_near_boundary = 0;
  std::size_t n_trapped_nodes = 0;
  std::size_t fallback_count = 0;
  std::size_t trapped_count = 0;
  std::size_t isolated_reclassified = 0;
  std::vector<std::string> warnings;
  Solution solution;
  ErrorReport report;
  RhsField rhs;
};

/// classify -> rhs -> assemble -> solve -> error report for one mesh size.
ExperimentResult run_experiment(const ExperimentConfig& config, int nodes);

/// Same, also returning the classification for field output.
ExperimentResult run_experiment(const ExperimentConfig& config, int nodes,
                                std::optional<NodeClassification>* classification_out);

struct ConvergenceRow {
  int nodes = 0;
  double spacing = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  double l1_order = 0.0;  ///< NaN on the first row
  double linf_order = 0.0;
};

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config);

/// Solve the 1-D case and decompose its error.
struct Decomposition1DRun {
  Decomposition1D decomposition;
  std::vector<double> xi;  ///< solved φ - φᵉ
};

Decomposition1DRun run_decomposition_1d(const ExperimentConfig& config, int nodes);

}  // namespace ebp
