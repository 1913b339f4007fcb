#include "ebpoisson/rhs.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTinyB = 1e-300;

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_level(int level) {
  if (level < 1) throw UsageError("sampling level must be >= 1");
  if (level > 20) throw UsageError("sampling level above 20 is not supported");
}

}  // namespace

std::string RhsMode::name() const {
  switch (kind) {
    case Kind::Exact:
      return "exact";
    case Kind::Sampled:
      return "sampled";
    case Kind::Calibrated:
      return "calibrated";
    case Kind::ScaledLinearToQuad:
      return "scaled1d";
  }
  return "unknown";
}

Deposit cic_deposit(const Point& center, const std::array<double, 3>& spacing,
                    const LevelSetGeometry& geometry, const PointFunction& b, int level) {
  check_level(level);
  const int dim = center.dim;
  const long per_cell = 1L << (level - 1);
  const long per_axis = 2 * per_cell;

  // Offsets and tent weights along one axis, shared by every axis up to scaling.
  std::vector<double> unit_offset(static_cast<std::size_t>(per_axis));
  std::vector<double> tent(static_cast<std::size_t>(per_axis));
  for (long k = 0; k < per_axis; ++k) {
    const double u = -1.0 + (static_cast<double>(k) + 0.5) / static_cast<double>(per_cell);
    unit_offset[static_cast<std::size_t>(k)] = u;
    tent[static_cast<std::size_t>(k)] = 1.0 - std::abs(u);
  }
  const double norm = std::pow(static_cast<double>(per_cell), -dim);

  CompensatedSum weighted;
  CompensatedSum fraction;
  std::array<long, 3> k{0, 0, 0};
  const long ny = dim >= 2 ? per_axis : 1;
  const long nz = dim >= 3 ? per_axis : 1;
  Point particle = center;
  for (k[2] = 0; k[2] < nz; ++k[2]) {
    for (k[1] = 0; k[1] < ny; ++k[1]) {
      for (k[0] = 0; k[0] < per_axis; ++k[0]) {
        double w = norm;
        for (int a = 0; a < dim; ++a) {
          const auto ka = static_cast<std::size_t>(k[static_cast<std::size_t>(a)]);
          particle[a] = center[a] + unit_offset[ka] * spacing[static_cast<std::size_t>(a)];
          w *= tent[ka];
        }
        if (!geometry.inside(particle)) continue;
        fraction.add(w);
        if (b) weighted.add(w * b(particle));
      }
    }
  }
  return {weighted.value(), fraction.value()};
}

namespace {

std::array<double, 3> spacing_of(const Mesh& mesh) {
  return {mesh.spacing(0), mesh.dimension() > 1 ? mesh.spacing(1) : 0.0,
          mesh.dimension() > 2 ? mesh.spacing(2) : 0.0};
}

}  // namespace

double sample_rhs(const NodeClassification& classification, const LevelSetGeometry& geometry,
                  std::size_t node, const PointFunction& b, int level) {
  if (!classification.near_boundary(node)) {
    throw UsageError("sample_rhs: node is not near the boundary; use the exact RHS");
  }
  const Mesh& mesh = classification.mesh();
  return cic_deposit(mesh.position(node), spacing_of(mesh), geometry, b, level).weighted;
}

double delta_sampled(const NodeClassification& classification, const LevelSetGeometry& geometry,
                     std::size_t node, int level) {
  if (!classification.interior(node)) throw UsageError("delta_sampled: node is not interior");
  const Mesh& mesh = classification.mesh();
  return cic_deposit(mesh.position(node), spacing_of(mesh), geometry, PointFunction{}, level)
      .fraction;
}

double delta_closed_1d(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("delta_closed_1d: theta outside [0, 1]");
  return -0.5 * theta * theta + theta + 0.5;
}

double delta_integral_1d(const std::function<double(double)>& b, double node, double spacing,
                         double theta) {
  if (!(spacing > 0.0)) throw UsageError("delta_integral_1d: spacing must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("delta_integral_1d: theta outside [0, 1]");
  const double b_node = b(node);
  if (std::abs(b_node) < kTinyB) throw UsageError("delta_integral_1d: b(node) is zero");

  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 30;
  constexpr double kTol = 1e-10;
  const double left_end = node - spacing;
  const double right_end = node + spacing;
  const double rising = Quad::integrate(
      [&](double x) { return b(x) * (x - left_end) / spacing; }, left_end, node, kMaxDepth, kTol);
  double falling = 0.0;
  if (theta > 0.0) {
    falling = Quad::integrate([&](double x) { return b(x) * (right_end - x) / spacing; }, node,
                              node + theta * spacing, kMaxDepth, kTol);
  }
  return (rising + falling) / spacing / b_node;
}

RhsField eval_exact(const TestCase& test_case, const NodeClassification& classification) {
  const Mesh& mesh = classification.mesh();
  if (mesh.dimension() != test_case.dimension) throw UsageError("eval_exact: dimension mismatch");
  RhsField field;
  field.mode = RhsMode::exact();
  const auto& nodes = classification.interior_nodes();
  field.values.resize(nodes.size());
  field.delta.assign(nodes.size(), kNaN);
  field.delta_bar.assign(nodes.size(), kNaN);
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    field.values[u] = test_case.exact_b(mesh.position(nodes[u]));
  }
  return field;
}

RhsField build_rhs(const TestCase& test_case, const NodeClassification& classification,
                   RhsMode mode) {
  RhsField field = eval_exact(test_case, classification);
  field.mode = mode;
  if (mode.kind == RhsMode::Kind::Exact) return field;

  const Mesh& mesh = classification.mesh();
  const auto& nodes = classification.interior_nodes();

  if (mode.kind == RhsMode::Kind::ScaledLinearToQuad) {
    if (mesh.dimension() != 1) {
      throw UsageError("the (1+theta)/2 RHS scaling is only defined for 1-D problems");
    }
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      const std::size_t n = nodes[u];
      if (!classification.near_boundary(n)) continue;
      const double lo = classification.theta(n, {0, -1}).value_or(1.0);
      const double hi = classification.theta(n, {0, +1}).value_or(1.0);
      field.values[u] *= 0.5 * (lo + hi);
    }
    return field;
  }

  check_level(mode.level);
  const auto spacing = spacing_of(mesh);
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const std::size_t n = nodes[u];
    if (!classification.near_boundary(n)) {
      field.delta_bar[u] = 1.0;
      continue;
    }
    const Deposit d =
        cic_deposit(mesh.position(n), spacing, test_case.geometry, test_case.exact_b, mode.level);
    const double exact = field.values[u];
    if (std::abs(exact) >= kTinyB) field.delta[u] = d.weighted / exact;
    field.delta_bar[u] = d.fraction;
    if (mode.kind == RhsMode::Kind::Sampled) {
      field.values[u] = d.weighted;
    } else {
      if (!(d.fraction > 0.0)) {
        throw GeometryError("calibration: node has an empty deposition support");
      }
      field.values[u] = d.weighted / d.fraction;
    }
  }
  return field;
}

}  // namespace ebp
