#include "ebpoisson/cases.hpp"

#include <cmath>
#include <numbers>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int order) {
  if (order < 1 || order > 4) throw UsageError("derivative order must be 1..4");
}

}  // namespace

TestCase case_1d(double left, double right) {
  TestCase c{.name = "case1d",
             .dimension = 1,
             .domain_lo = -0.5,
             .domain_hi = 0.5,
             .geometry = LevelSetGeometry::interval(left, right),
             .exact_phi = {},
             .exact_b = {},
             .derivative = {}};
  c.exact_phi = [](const Point& p) {
    const double x = p[0];
    return 4.0 * x * x * std::sin(2.0 * kPi * x);
  };
  c.exact_b = [](const Point& p) {
    const double x = p[0];
    return 8.0 * (1.0 - 2.0 * kPi * kPi * x * x) * std::sin(2.0 * kPi * x) +
           32.0 * kPi * x * std::cos(2.0 * kPi * x);
  };
  c.derivative = [](const Point& p, int axis, int order) {
    check_order(order);
    if (axis != 0) throw UsageError("case1d has a single axis");
    const double x = p[0];
    const double k = 2.0 * kPi;
    const double s = std::sin(k * x);
    const double co = std::cos(k * x);
    switch (order) {
      case 1:
        return 8.0 * x * s + 4.0 * x * x * k * co;
      case 2:
        return 8.0 * s + 16.0 * k * x * co - 4.0 * k * k * x * x * s;
      case 3:
        return 24.0 * k * co - 24.0 * k * k * x * s - 4.0 * k * k * k * x * x * co;
      default:
        return -48.0 * k * k * s - 32.0 * k * k * k * x * co + 4.0 * std::pow(k, 4) * x * x * s;
    }
  };
  return c;
}

LevelSetGeometry reference_starfish() {
  const double shift = 0.02 * std::sqrt(5.0);
  return LevelSetGeometry::starfish(Point(shift, shift), 0.5, 0.2, 5);
}

TestCase case_2d() {
  TestCase c{.name = "case2d",
             .dimension = 2,
             .domain_lo = -1.0,
             .domain_hi = 1.0,
             .geometry = reference_starfish(),
             .exact_phi = {},
             .exact_b = {},
             .derivative = {}};
  c.exact_phi = [](const Point& p) {
    const double u = p[0] + 2.0;
    const double v = p[1] - 2.0;
    return 1.0 / (u * u + v * v);
  };
  c.exact_b = [](const Point& p) {
    const double x = p[0];
    const double y = p[1];
    const double q = 8.0 + 4.0 * x + x * x - 4.0 * y + y * y;
    return 4.0 / (q * q);
  };
  c.derivative = [](const Point& p, int axis, int order) {
    check_order(order);
    if (axis < 0 || axis > 1) throw UsageError("case2d axis must be 0 or 1");
    const double u = p[0] + 2.0;
    const double v = p[1] - 2.0;
    const double q = u * u + v * v;
    const double w = axis == 0 ? u : v;
    const double q2 = q * q;
    const double q3 = q2 * q;
    switch (order) {
      case 1:
        return -2.0 * w / q2;
      case 2:
        return -2.0 / q2 + 8.0 * w * w / q3;
      case 3:
        return 24.0 * w / q3 - 48.0 * w * w * w / (q3 * q);
      default:
        return 24.0 / q3 - 288.0 * w * w / (q3 * q) + 384.0 * std::pow(w, 4) / (q3 * q2);
    }
  };
  return c;
}

TestCase case_2d_uniform() {
  TestCase c{.name = "case2d-uniform",
             .dimension = 2,
             .domain_lo = -1.0,
             .domain_hi = 1.0,
             .geometry = reference_starfish(),
             .exact_phi = {},
             .exact_b = {},
             .derivative = {}};
  c.exact_phi = [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; };
  c.exact_b = [](const Point&) { return 4.0; };
  c.derivative = [](const Point& p, int axis, int order) {
    check_order(order);
    if (axis < 0 || axis > 1) throw UsageError("case2d-uniform axis must be 0 or 1");
    switch (order) {
      case 1:
        return 2.0 * p[axis];
      case 2:
        return 2.0;
      default:
        return 0.0;
    }
  };
  return c;
}

TestCase case_3d() {
  TestCase c{.name = "case3d",
             .dimension = 3,
             .domain_lo = 0.0,
             .domain_hi = 1.0,
             .geometry = LevelSetGeometry::sphere(Point(0.5, 0.5, 0.5), 0.3),
             .exact_phi = {},
             .exact_b = {},
             .derivative = {}};
  c.exact_phi = [](const Point& p) {
    return std::exp(-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
  };
  c.exact_b = [](const Point& p) {
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    return std::exp(-r2) * (4.0 * r2 - 6.0);
  };
  c.derivative = [](const Point& p, int axis, int order) {
    check_order(order);
    if (axis < 0 || axis > 2) throw UsageError("case3d axis must be 0..2");
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double x = p[axis];
    const double e = std::exp(-r2);
    switch (order) {
      case 1:
        return -2.0 * x * e;
      case 2:
        return (4.0 * x * x - 2.0) * e;
      case 3:
        return (-8.0 * x * x * x + 12.0 * x) * e;
      default:
        return (16.0 * std::pow(x, 4) - 48.0 * x * x + 12.0) * e;
    }
  };
  return c;
}

TestCase case_by_name(const std::string& name) {
  if (name == "case1d") return case_1d();
  if (name == "case2d") return case_2d();
  if (name == "case2d-uniform") return case_2d_uniform();
  if (name == "case3d") return case_3d();
  throw UsageError("unknown case '" + name + "'");
}

std::vector<std::string> case_names() { return {"case1d", "case2d", "case2d-uniform", "case3d"}; }

}  // namespace ebp
