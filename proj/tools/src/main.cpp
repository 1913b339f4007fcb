#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "ebpoisson/analysis.hpp"
#include "ebpoisson/errors.hpp"
#include "ebpoisson/experiment.hpp"
#include "json.hpp"
#include "settings.hpp"
#include "table.hpp"

namespace {

using namespace ebp;
using cli::Settings;
using cli::Table;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> index_columns(int dim) {
  static const char* names[] = {"ix", "iy", "iz"};
  return {names, names + dim};
}

void append_index(std::vector<double>& row, const NodeIndex& idx, int dim) {
  for (int a = 0; a < dim; ++a) row.push_back(idx[static_cast<std::size_t>(a)]);
}

void write_json(const std::filesystem::path& dir, const std::string& name, const Json& doc) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
  os << doc.dump(2) << '\n';
}

Json describe(const ExperimentConfig& e) {
  Json j;
  j["case"] = e.case_name;
  j["scheme"] = e.scheme.name();
  j["fallback"] = e.scheme.fallback_enabled;
  j["rhs"] = e.rhs.name();
  j["level"] = e.rhs.level;
  j["solver"] = method_name(e.solver.method);
  j["tol"] = e.solver.relative_residual_tolerance;
  return j;
}

void report_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
}

int cmd_solve(const Settings& s) {
  const ExperimentConfig& e = s.experiment;
  e.validate();
  if (e.nodes.size() != 1) throw UsageError("solve takes exactly one --nodes value");
  const int nodes = e.nodes.front();
  std::optional<NodeClassification> cls;
  const ExperimentResult r = run_experiment(e, nodes, &cls);
  report_warnings(r.warnings);
  const Mesh& mesh = cls->mesh();
  const int dim = mesh.dimension();

  Table field;
  field.columns = index_columns(dim);
  field.columns.insert(field.columns.end(), {"xi", "tau"});
  for (std::size_t u = 0; u < r.report.xi.size(); ++u) {
    std::vector<double> row;
    append_index(row, mesh.multi(cls->node_of(u)), dim);
    row.push_back(r.report.xi[u]);
    row.push_back(r.report.tau[u]);
    field.add(std::move(row));
  }
  cli::write_table(s.out, "field", field, s.format);

  if (e.rhs.kind == RhsMode::Kind::Sampled || e.rhs.kind == RhsMode::Kind::Calibrated) {
    Table delta;
    delta.columns = index_columns(dim);
    delta.columns.insert(delta.columns.end(), {"delta", "delta_bar"});
    for (std::size_t u = 0; u < r.rhs.values.size(); ++u) {
      const std::size_t n = cls->node_of(u);
      if (!cls->near_boundary(n)) continue;
      std::vector<double> row;
      append_index(row, mesh.multi(n), dim);
      row.push_back(r.rhs.delta[u]);
      row.push_back(r.rhs.delta_bar[u]);
      delta.add(std::move(row));
    }
    cli::write_table(s.out, "delta", delta, s.format);
  }

  if (s.dump_matrix) {
    const TestCase tc = e.make_case();
    const SparseSystem sys = assemble(*cls, e.scheme, tc.exact_phi);
    std::filesystem::create_directories(s.out);
    std::ofstream os(s.out / "matrix.mtx", std::ios::binary);
    sys.write_matrix_market(os);
  }

  Json summary = describe(e);
  summary["nodes"] = nodes;
  summary["n_interior"] = r.n_interior;
  summary["n_near_boundary"] = r.n_near_boundary;
  summary["n_trapped_nodes"] = r.n_trapped_nodes;
  summary["fallback_count"] = r.fallback_count;
  summary["trapped_directions"] = r.trapped_count;
  summary["L1"] = r.report.l1_normalized;
  summary["Linf"] = r.report.l_infinity;
  summary["residual"] = r.solution.relative_residual;
  summary["solver_used"] = method_name(r.solution.method);
  summary["iterations"] = r.solution.iterations;
  summary["warnings"] = r.warnings;
  write_json(s.out, "summary.json", summary);

  const std::string scheme_label =
      e.scheme.is_linear() ? "linear"
                           : (e.scheme.fallback_enabled ? "quadratic+fallback" : "quadratic");
  fmt::print("{} {} rhs={} nodes={}: L1={} Linf={} residual={}\n", e.case_name, scheme_label,
             e.rhs.name(), nodes, cli::format_number(r.report.l1_normalized),
             cli::format_number(r.report.l_infinity),
             cli::format_number(r.solution.relative_residual));
  return kExitOk;
}

int cmd_convergence(const Settings& s) {
  const ExperimentConfig& e = s.experiment;
  e.validate();
  const auto rows = run_convergence(e);
  Table t;
  t.columns = {"n", "L1", "L1_order", "Linf", "Linf_order"};
  for (const auto& r : rows) t.add({double(r.nodes), r.l1, r.l1_order, r.linf, r.linf_order});
  cli::write_table(s.out, "convergence", t, s.format);
  fmt::print("{:>6} {:>24} {:>8} {:>24} {:>8}\n", "n", "L1", "order", "Linf", "order");
  for (const auto& r : rows) {
    const auto ord = [](double v) { return std::isnan(v) ? std::string("--") : fmt::format("{:.2f}", v); };
    fmt::print("{:>6} {:>24} {:>8} {:>24} {:>8}\n", r.nodes, cli::format_number(r.l1), ord(r.l1_order),
               cli::format_number(r.linf), ord(r.linf_order));
  }
  return kExitOk;
}

int cmd_contours(const Settings& s) {
  const int level = s.level_given ? s.level : 6;
  const auto rows = leading_coeff_contours(s.resolution, level);
  Table t;
  t.columns = {"theta_x", "theta_y", "lin_x", "lin_y", "lin_sum", "lq_x", "lq_y", "lq_sum"};
  for (const auto& r : rows) {
    t.add({r.theta_x, r.theta_y, r.lin_x, r.lin_y, r.lin_sum, r.lq_x, r.lq_y, r.lq_sum});
  }
  const auto path = cli::write_table(s.out, "contours", t, s.format);
  fmt::print("wrote {} rows to {}\n", rows.size(), path.string());
  return kExitOk;
}

int cmd_sweep(const Settings& s, bool nodes_given) {
  const ExperimentConfig& e = s.experiment;
  if (e.rhs.kind != RhsMode::Kind::Exact && e.rhs.kind != RhsMode::Kind::Sampled) {
    throw UsageError("sweep supports --rhs exact or sampled");
  }
  if (!(s.theta_step > 0.0 && s.theta_step < 0.5)) throw UsageError("theta step must lie in (0, 0.5)");
  SweepSetup setup;
  if (nodes_given) setup.nodes = e.nodes.front();
  if (s.level_given) setup.sampling_level = s.level;
  std::vector<double> thetas;
  const int count = static_cast<int>(std::floor((1.0 - 1e-12) / s.theta_step));
  for (int k = 1; k <= count; ++k) {
    const double t = k * s.theta_step;
    if (t < 1.0) thetas.push_back(t);
  }
  const SweepResult res = boundary_error_sweep(e.scheme, e.rhs, thetas, setup);
  Table t;
  t.columns = {"theta", "xi_L_mag"};
  for (const auto& p : res.points) t.add({p.theta, p.magnitude});
  cli::write_table(s.out, "sweep", t, s.format);
  Json summary = describe(e);
  summary["nodes"] = setup.nodes;
  summary["sampling_level"] = setup.sampling_level;
  summary["argmax_theta"] = res.argmax_theta;
  write_json(s.out, "sweep_summary.json", summary);
  fmt::print("argmax theta = {}\n", cli::format_number(res.argmax_theta));
  return kExitOk;
}

int cmd_decompose(Settings s, bool nodes_given) {
  ExperimentConfig& e = s.experiment;
  e.case_name = "case1d";
  if (!nodes_given) e.nodes = {161};
  e.validate();
  if (e.nodes.size() != 1) throw UsageError("decompose1d takes exactly one --nodes value");
  const Decomposition1DRun run = run_decomposition_1d(e, e.nodes.front());
  const Decomposition1D& d = run.decomposition;
  const auto sum = d.component_sum();
  Table t;
  t.columns = {"i", "x", "xi", "xi_formula", "xi_L", "xi_R", "xi_in", "residual"};
  double max_xi = 0.0;
  double max_res = 0.0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double res = run.xi[i] - sum[i];
    max_xi = std::max(max_xi, std::abs(run.xi[i]));
    max_res = std::max(max_res, std::abs(res));
    t.add({double(i + 1), d.x[i], run.xi[i], d.xi_formula[i], d.xi_left[i], d.xi_right[i],
           d.xi_interior[i], res});
  }
  cli::write_table(s.out, "decompose1d", t, s.format);
  Json summary = describe(e);
  summary["nodes"] = e.nodes.front();
  summary["theta_left"] = d.theta_left;
  summary["theta_right"] = d.theta_right;
  summary["max_abs_xi"] = max_xi;
  summary["max_abs_residual"] = max_res;
  summary["relative_residual"] = max_xi > 0.0 ? max_res / max_xi : 0.0;
  write_json(s.out, "decompose1d_summary.json", summary);
  fmt::print("theta_L={} theta_R={} max|xi|={} max|residual|/max|xi|={}\n",
             cli::format_number(d.theta_left), cli::format_number(d.theta_right),
             cli::format_number(max_xi), cli::format_number(max_xi > 0 ? max_res / max_xi : 0.0));
  return kExitOk;
}

int cmd_theta_map(const Settings& s) {
  const ExperimentConfig& e = s.experiment;
  e.validate();
  if (e.nodes.size() != 1) throw UsageError("theta-map takes exactly one --nodes value");
  const TestCase tc = e.make_case();
  const Mesh mesh = Mesh::box(tc.dimension, tc.domain_lo, tc.domain_hi, e.nodes.front());
  const NodeClassification cls = classify(mesh, tc.geometry);
  const int dim = tc.dimension;
  Table t;
  t.columns = index_columns(dim);
  static const char* names[] = {"theta_x", "theta_y", "theta_z"};
  t.columns.insert(t.columns.end(), names, names + dim);
  t.columns.push_back("trapped");
  for (const auto& entry : theta_map(cls)) {
    std::vector<double> row;
    append_index(row, entry.index, dim);
    for (int a = 0; a < dim; ++a) row.push_back(entry.theta[static_cast<std::size_t>(a)]);
    row.push_back(entry.trapped ? 1.0 : 0.0);
    t.add(std::move(row));
  }
  const auto path = cli::write_table(s.out, "theta_map", t, s.format);
  fmt::print("{} near-boundary nodes, {} trapped; wrote {}\n", cls.num_near_boundary(),
             cls.num_trapped(), path.string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedded-boundary Poisson experiments"};
  app.require_subcommand(1);

  cli::Flags flags;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    cli::register_common(*sub, flags);
    return sub;
  };
  CLI::App* solve_cmd = add("solve", "solve one case and write error fields");
  flags.given.push_back(solve_cmd->add_flag("--dump-matrix", flags.dump_matrix, "write matrix.mtx"));
  CLI::App* conv_cmd = add("convergence", "error norms and orders over a mesh list");
  CLI::App* contour_cmd = add("contours", "leading-coefficient comparison grid");
  flags.given.push_back(contour_cmd->add_option("--resolution", flags.resolution, "theta samples per axis"));
  CLI::App* sweep_cmd = add("sweep", "1-D boundary error versus theta");
  flags.given.push_back(sweep_cmd->add_option("--theta-step", flags.theta_step, "theta increment"));
  CLI::App* decomp_cmd = add("decompose1d", "1-D error decomposition");
  CLI::App* theta_cmd = add("theta-map", "per-axis theta of near-boundary nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const bool nodes_given = flags.was_given("--nodes");
    if (*solve_cmd) return cmd_solve(cli::resolve(flags, {41}));
    if (*conv_cmd) return cmd_convergence(cli::resolve(flags, {41, 81, 161}));
    if (*contour_cmd) return cmd_contours(cli::resolve(flags, {41}));
    if (*sweep_cmd) return cmd_sweep(cli::resolve(flags, {1601}), nodes_given);
    if (*decomp_cmd) return cmd_decompose(cli::resolve(flags, {161}), nodes_given);
    if (*theta_cmd) return cmd_theta_map(cli::resolve(flags, {41}));
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const AssemblyError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    fmt::print(stderr, "solver failure: {} (best residual {})\n", e.what(),
               cli::format_number(e.best_residual()));
    return kExitSolver;
  } catch (const SolverError& e) {
    fmt::print(stderr, "solver failure: {}\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitOther;
  }
  return kExitOther;
}
