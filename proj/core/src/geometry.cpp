#include "ebpoisson/geometry.hpp"

#include <cmath>
#include <numbers>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

LevelSetGeometry::LevelSetGeometry(ShapeKind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [&](const shape::Interval1D& s) {
                   if (!(s.left < s.right)) throw UsageError("interval: left must be < right");
                   dim_ = 1;
                 },
                 [&](const shape::Starfish2D& s) {
                   if (!(s.base_radius > std::abs(s.amplitude)))
                     throw UsageError("starfish: base radius must exceed |amplitude|");
                   if (s.center.dim != 2) throw UsageError("starfish: center must be 2-D");
                   dim_ = 2;
                 },
                 [&](const shape::Sphere3D& s) {
                   if (!(s.radius > 0.0)) throw UsageError("sphere: radius must be positive");
                   if (s.center.dim != 3) throw UsageError("sphere: center must be 3-D");
                   dim_ = 3;
                   // Ω = |p - c| - r, interior where Ω < 0.
                   convention_ = InsideConvention::NegativeInside;
                 },
                 [&](const shape::StraightLine2D& s) {
                   if (!(s.theta_x > 0.0) || !(s.theta_y > 0.0) || s.theta_x > 1.0 ||
                       s.theta_y > 1.0)
                     throw UsageError("straight line: theta values must lie in (0, 1]");
                   if (!(s.spacing > 0.0)) throw UsageError("straight line: spacing must be positive");
                   dim_ = 2;
                 },
                 [&](const shape::Halfspace& s) {
                   if (s.normal.dim < 1) throw UsageError("halfspace: normal has no dimension");
                   double n2 = 0.0;
                   for (int a = 0; a < s.normal.dim; ++a) n2 += s.normal[a] * s.normal[a];
                   if (!(n2 > 0.0)) throw UsageError("halfspace: zero normal");
                   dim_ = s.normal.dim;
                 },
             },
             kind_);
}

LevelSetGeometry LevelSetGeometry::interval(double left, double right) {
  return LevelSetGeometry(shape::Interval1D{left, right});
}

LevelSetGeometry LevelSetGeometry::starfish(Point center, double base_radius, double amplitude,
                                            int lobes) {
  return LevelSetGeometry(shape::Starfish2D{center, base_radius, amplitude, lobes});
}

LevelSetGeometry LevelSetGeometry::sphere(Point center, double radius) {
  return LevelSetGeometry(shape::Sphere3D{center, radius});
}

LevelSetGeometry LevelSetGeometry::halfspace(Point normal, double offset) {
  return LevelSetGeometry(shape::Halfspace{normal, offset});
}

std::string LevelSetGeometry::kind_name() const {
  return std::visit(Overloaded{
                        [](const shape::Interval1D&) { return std::string("interval"); },
                        [](const shape::Starfish2D&) { return std::string("starfish"); },
                        [](const shape::Sphere3D&) { return std::string("sphere"); },
                        [](const shape::StraightLine2D&) { return std::string("straight-line"); },
                        [](const shape::Halfspace&) { return std::string("halfspace"); },
                    },
                    kind_);
}

void LevelSetGeometry::check_dimension(const Point& p) const {
  if (p.dim != dim_) {
    throw UsageError("point of dimension " + std::to_string(p.dim) + " queried against " +
                     std::to_string(dim_) + "-D geometry");
  }
}

double LevelSetGeometry::level_set(const Point& p) const {
  check_dimension(p);
  return std::visit(
      Overloaded{
          [&](const shape::Interval1D& s) { return std::min(p[0] - s.left, s.right - p[0]); },
          [&](const shape::Starfish2D& s) {
            // Shifted polar frame: inside iff ρ < R + A sin(k t).
            const double dx = p[0] - s.center[0];
            const double dy = p[1] - s.center[1];
            const double rho = std::hypot(dx, dy);
            const double t = std::atan2(dy, dx);
            return s.base_radius + s.amplitude * std::sin(s.lobes * t) - rho;
          },
          [&](const shape::Sphere3D& s) {
            const double dx = p[0] - s.center[0];
            const double dy = p[1] - s.center[1];
            const double dz = p[2] - s.center[2];
            return std::sqrt(dx * dx + dy * dy + dz * dz) - s.radius;
          },
          [&](const shape::StraightLine2D& s) {
            const double u = (p[0] - s.anchor[0]) / (s.theta_x * s.spacing);
            const double v = (p[1] - s.anchor[1]) / (s.theta_y * s.spacing);
            return 1.0 - u - v;
          },
          [&](const shape::Halfspace& s) {
            double dot = 0.0;
            for (int a = 0; a < dim_; ++a) dot += s.normal[a] * p[a];
            return s.offset - dot;
          },
      },
      kind_);
}

double LevelSetGeometry::interior_measure(const Point& p) const {
  const double omega = level_set(p);
  return convention_ == InsideConvention::PositiveInside ? omega : -omega;
}

bool LevelSetGeometry::inside(const Point& p) const { return interior_measure(p) > 0.0; }

std::optional<double> LevelSetGeometry::axial_crossing(const Point& node, SignedAxis dir,
                                                       double spacing) const {
  check_dimension(node);
  if (!(spacing > 0.0)) throw UsageError("axial_crossing: spacing must be positive");
  if (dir.axis < 0 || dir.axis >= dim_) throw UsageError("axial_crossing: axis out of range");
  if (!inside(node)) throw UsageError("axial_crossing: node is not interior");

  auto along = [&](double s) {
    Point q = node;
    q[dir.axis] = std::fma(s * spacing, static_cast<double>(dir.sign), node[dir.axis]);
    return interior_measure(q);
  };

  const double f_end = along(1.0);
  if (std::isnan(f_end)) throw GeometryError("axial_crossing: level set is not finite at neighbour");
  if (f_end > 0.0) return std::nullopt;
  if (f_end == 0.0) return 1.0;

  // f(lo) > 0 (interior), f(hi) <= 0 (exterior or on interface).
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kCrossingMaxIterations && (hi - lo) > kCrossingRelativeTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (along(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = 0.5 * (lo + hi);
  if (theta >= 1.0 - kCrossingRelativeTolerance) return 1.0;
  if (!(theta > 0.0)) throw GeometryError("axial_crossing: crossing collapsed onto the node");
  return theta;
}

LevelSetGeometry average_interface(double theta_x, double theta_y, Point anchor, double spacing) {
  if (!(theta_x > 0.0) || !(theta_y > 0.0)) {
    throw UsageError("average_interface: theta values must be positive");
  }
  if (anchor.dim != 2) throw UsageError("average_interface: anchor must be 2-D");
  return LevelSetGeometry(shape::StraightLine2D{theta_x, theta_y, anchor, spacing});
}

}  // namespace ebp
