#include "ebpoisson/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <variant>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kQuadDepth = 25;
constexpr double kQuadTol = 1e-11;

std::function<double(double)> fourth_derivative_1d(const TestCase& test_case, double spacing) {
  if (test_case.derivative) {
    return [&test_case](double x) { return test_case.derivative(Point(x), 0, 4); };
  }
  const double h = spacing / 8.0;
  return [&test_case, h](double x) {
    const auto f = [&](double s) { return test_case.exact_phi(Point(s)); };
    return (f(x - 2 * h) - 4 * f(x - h) + 6 * f(x) - 4 * f(x + h) + f(x + 2 * h)) / (h * h * h * h);
  };
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return Quad::integrate(f, a, b, kQuadDepth, kQuadTol);
}

}  // namespace

std::vector<double> exact_on_unknowns(const TestCase& test_case,
                                      const NodeClassification& classification) {
  const Mesh& mesh = classification.mesh();
  const auto& nodes = classification.interior_nodes();
  std::vector<double> out(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) out[u] = test_case.exact_phi(mesh.position(nodes[u]));
  return out;
}

std::vector<double> truncation_field(const AssembledProblem& problem,
                                     std::span<const double> exact_phi) {
  if (exact_phi.size() != problem.system.n_unknowns) {
    throw UsageError("truncation_field: exact field size mismatch");
  }
  std::vector<double> tau = problem.system.multiply(exact_phi);
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = problem.rhs_vector[i] - tau[i];
  return tau;
}

std::vector<double> truncation_field(const TestCase& test_case,
                                     const NodeClassification& classification, SchemeKind scheme,
                                     const RhsField& rhs) {
  const AssembledProblem problem = assemble(classification, scheme, test_case.exact_phi, rhs);
  return truncation_field(problem, exact_on_unknowns(test_case, classification));
}

ErrorReport error_report(std::span<const double> phi, std::span<const double> exact_phi,
                         const Mesh& mesh, std::vector<double> tau) {
  if (phi.size() != exact_phi.size()) throw UsageError("error_report: field size mismatch");
  if (!tau.empty() && tau.size() != phi.size()) {
    throw UsageError("error_report: tau must cover the same nodes as phi");
  }
  ErrorReport report;
  report.xi.resize(phi.size());
  report.tau = std::move(tau);
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    report.xi[i] = phi[i] - exact_phi[i];
    const double a = std::abs(report.xi[i]);
    sum += a;
    report.l_infinity = std::max(report.l_infinity, a);
  }
  report.l1_normalized = phi.empty() ? 0.0 : sum / static_cast<double>(phi.size());
  for (int a = 0; a < mesh.dimension(); ++a) report.spacing[static_cast<std::size_t>(a)] = mesh.spacing(a);
  return report;
}

double order_estimate(double norm_coarse, double norm_fine, double delta_coarse, double delta_fine) {
  if (!(norm_coarse > 0.0 && norm_fine > 0.0 && delta_coarse > 0.0 && delta_fine > 0.0)) {
    throw UsageError("order_estimate: all inputs must be positive");
  }
  if (delta_coarse == delta_fine) throw UsageError("order_estimate: spacings must differ");
  return std::log(norm_coarse / norm_fine) / std::log(delta_coarse / delta_fine);
}

std::vector<double> Decomposition1D::component_sum() const {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xi_left[i] + xi_right[i] + xi_interior[i];
  return out;
}

double interior_contribution_1d(const TestCase& test_case, double xl, double xr, double x,
                                double spacing) {
  const auto d4 = fourth_derivative_1d(test_case, spacing);
  const double length = xr - xl;
  const double u = x - xl;
  const auto moment = [&](double s) { return (s - xl) * d4(s); };
  const double left_moment = integrate(moment, xl, x);
  const double full_moment = integrate(moment, xl, xr);
  const double right_plain = integrate(d4, x, xr);
  return spacing * spacing / 12.0 * (left_moment - u / length * full_moment + u * right_plain);
}

Decomposition1D decompose_1d(std::span<const double> taus, double theta_left, double theta_right,
                             SchemeKind scheme, const TestCase& test_case) {
  if (test_case.dimension != 1) throw UsageError("decompose_1d: only 1-D cases are supported");
  const auto* interval = std::get_if<shape::Interval1D>(&test_case.geometry.kind());
  if (!interval) throw UsageError("decompose_1d: case geometry must be an interval");
  if (!(theta_left > 0.0 && theta_left <= 1.0 && theta_right > 0.0 && theta_right <= 1.0)) {
    throw UsageError("decompose_1d: thetas must lie in (0, 1]");
  }
  if (taus.size() < 2) throw UsageError("decompose_1d: need at least two interior nodes");

  const std::size_t n_int = taus.size();
  const std::size_t big_n = n_int + 1;
  const double nn = static_cast<double>(big_n);
  const double tl = theta_left;
  const double tr = theta_right;
  const double xl = interval->left;
  const double xr = interval->right;
  const double m = nn + tl + tr - 2.0;
  const double h = (xr - xl) / m;

  Decomposition1D d;
  d.intervals = big_n;
  d.spacing = h;
  d.theta_left = tl;
  d.theta_right = tr;
  d.scheme = scheme;
  d.x.resize(n_int);
  d.xi_formula.resize(n_int);
  d.xi_left.resize(n_int);
  d.xi_right.resize(n_int);
  d.xi_interior.resize(n_int);

  // τ_k for k = 1..N-1 is taus[k-1].
  const auto tau = [&](std::size_t k) { return taus[k - 1]; };
  const double tau_first = tau(1);
  const double tau_last = tau(big_n - 1);

  // Suffix sums of τ_k and k·τ_k over k > i give Σ_{k>i}(i-k)τ_k in O(1).
  std::vector<double> suffix_tau(big_n + 1, 0.0);
  std::vector<double> suffix_ktau(big_n + 1, 0.0);
  for (std::size_t k = big_n - 1; k >= 1; --k) {
    suffix_tau[k] = suffix_tau[k + 1] + tau(k);
    suffix_ktau[k] = suffix_ktau[k + 1] + static_cast<double>(k) * tau(k);
  }

  double weighted_all = 0.0;
  for (std::size_t k = 1; k < big_n; ++k) weighted_all += (static_cast<double>(k) + tl - 1.0) * tau(k);

  double h_ratio = 0.0;
  double quad_tail = 0.0;
  if (!scheme.is_linear()) {
    double middle = 0.0;
    for (std::size_t k = 2; k + 1 < big_n; ++k) middle += (1.0 - tl - static_cast<double>(k)) * tau(k);
    h_ratio = (tl * (1.0 + tl) / 2.0 * tau_first +
               ((nn + tl - 2.0) + tr * (1.0 - tr) / 2.0) * tau_last - middle) /
              m;
    for (std::size_t k = 2; k < big_n; ++k) quad_tail += (1.0 - tl - static_cast<double>(k)) * tau(k);
  }

  const auto d4 = fourth_derivative_1d(test_case, h);
  const auto moment = [&](double s) { return (s - xl) * d4(s); };
  const double full_moment = integrate(moment, xl, xr);
  const double length = xr - xl;

  for (std::size_t i = 1; i < big_n; ++i) {
    const double di = static_cast<double>(i);
    const std::size_t slot = i - 1;
    const double tail = di * suffix_tau[i + 1] - suffix_ktau[i + 1];
    const double xi_pos = xl + (di + tl - 1.0) * h;
    d.x[slot] = xi_pos;
    if (scheme.is_linear()) {
      d.xi_formula[slot] = h * h * (((di + tl - 1.0) / m - 1.0) * weighted_all - tail);
      d.xi_left[slot] = (di / nn - 1.0) * tl * tau_first * h * h;
      d.xi_right[slot] = -(di / nn) * tr * tau_last * h * h;
    } else {
      d.xi_formula[slot] =
          h * h * ((di + tl - 1.0) * h_ratio - 0.5 * tl * (1.0 + tl) * tau_first + quad_tail - tail);
      d.xi_left[slot] = 0.5 * (di / nn - 1.0) * tl * (1.0 + tl) * tau_first * h * h;
      d.xi_right[slot] = -(di / (2.0 * nn)) * tr * (1.0 + tr) * tau_last * h * h;
    }
    const double u = xi_pos - xl;
    d.xi_interior[slot] = h * h / 12.0 *
                          (integrate(moment, xl, xi_pos) - u / length * full_moment +
                           u * integrate(d4, xi_pos, xr));
  }
  return d;
}

SweepResult boundary_error_sweep(SchemeKind scheme, RhsMode rhs, std::span<const double> thetas,
                                 const SweepSetup& setup) {
  if (setup.nodes < 5) throw UsageError("boundary_error_sweep: mesh too small");
  const TestCase base = case_1d();
  const Mesh mesh = Mesh::box(1, base.domain_lo, base.domain_hi, setup.nodes);
  const double h = mesh.spacing(0);
  if (rhs.kind != RhsMode::Kind::Exact) rhs.level = setup.sampling_level;

  SweepResult result;
  result.points.reserve(thetas.size());
  double best = -1.0;
  for (const double theta : thetas) {
    if (!(theta > 0.0 && theta < 1.0)) throw UsageError("boundary_error_sweep: theta outside (0, 1)");
    const TestCase tc = case_1d(setup.first_node - theta * h, setup.right_interface);
    const NodeClassification cls = classify(mesh, tc.geometry);
    const RhsField field = build_rhs(tc, cls, rhs);
    const AssembledProblem problem = assemble(cls, scheme, tc.exact_phi, field);
    const std::vector<double> tau = truncation_field(problem, exact_on_unknowns(tc, cls));

    std::vector<double> load(tau.size(), 0.0);
    load[0] = tau[0];
    SolveOptions opt;
    opt.method = SolveOptions::Method::DirectBanded;
    const Solution z = solve(problem.system, load, opt, 1);
    double mag = 0.0;
    for (double v : z.phi) mag = std::max(mag, std::abs(v));
    result.points.push_back({theta, mag});
    if (mag > best) {
      best = mag;
      result.argmax_theta = theta;
    }
  }
  return result;
}

std::vector<ContourRow> leading_coeff_contours(int resolution, int sampling_level) {
  if (resolution < 2) throw UsageError("leading_coeff_contours: resolution must be >= 2");
  if (sampling_level < 1) throw UsageError("leading_coeff_contours: level must be >= 1");
  const Point anchor(0.0, 0.0);
  const std::array<double, 3> spacing{1.0, 1.0, 0.0};
  std::vector<ContourRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int j = 1; j <= resolution; ++j) {
    const double ty = static_cast<double>(j) / resolution;
    for (int i = 1; i <= resolution; ++i) {
      const double tx = static_cast<double>(i) / resolution;
      const LevelSetGeometry line = average_interface(tx, ty, anchor, 1.0);
      const double db = cic_deposit(anchor, spacing, line, PointFunction{}, sampling_level).fraction;
      const double cx = (1.0 - tx) / 2.0;
      const double cy = (1.0 - ty) / 2.0;
      const double sum = cx + cy;
      ContourRow row;
      row.theta_x = tx;
      row.theta_y = ty;
      row.delta_bar = db;
      row.lin_x = std::abs(cx + db - 1.0) - std::abs(cx);
      row.lin_y = std::abs(cy + db - 1.0) - std::abs(cy);
      row.lin_sum = std::abs(sum + 2.0 * (db - 1.0)) - std::abs(sum);
      row.lq_x = std::abs(cx + db - 1.0) - std::abs(db - 1.0);
      row.lq_y = std::abs(cy + db - 1.0) - std::abs(db - 1.0);
      row.lq_sum = std::abs(sum + 2.0 * (db - 1.0)) - std::abs(2.0 * (db - 1.0));
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ebp
