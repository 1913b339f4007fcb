#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ebpoisson/geometry.hpp"

namespace ebp {

using PointFunction = std::function<double(const Point&)>;

/// ∂ⁿφ/∂x_axisⁿ for n in {1, 2, 3, 4}.
using AxialDerivative = std::function<double(const Point&, int axis, int order)>;

/// Benchmark Poisson problem ∇²φ = b with a known solution on an embedded domain.
struct TestCase {
  std::string name;
  int dimension = 0;
  double domain_lo = 0.0;  // same bounds on every axis
  double domain_hi = 1.0;
  LevelSetGeometry geometry;
  PointFunction exact_phi;
  PointFunction exact_b;
  AxialDerivative derivative;  // may be empty
};

/// φ = 4x² sin 2πx on [-0.5, 0.5]; interior is (left, right).
TestCase case_1d(double left = -0.3156, double right = 0.3156);

/// φ = 1/((x+2)² + (y-2)²) inside a five-lobed starfish on [-1, 1]².
TestCase case_2d();

/// Same starfish, φ = x² + y² so that b ≡ 4.
TestCase case_2d_uniform();

/// φ = exp(-|x|²) inside the sphere |x - (½,½,½)| < 0.3 on [0, 1]³.
TestCase case_3d();

/// Lookup by CLI name: case1d, case2d, case2d-uniform, case3d.
TestCase case_by_name(const std::string& name);
std::vector<std::string> case_names();

/// The starfish used by both 2-D cases.
LevelSetGeometry reference_starfish();

}  // namespace ebp
