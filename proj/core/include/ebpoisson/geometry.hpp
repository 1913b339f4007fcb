#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

namespace ebp {

/// A point in 1, 2 or 3 dimensions. Unused trailing coordinates are zero.
struct Point {
  int dim = 0;
  std::array<double, 3> x{};

  Point() = default;
  explicit Point(double a) : dim(1), x{a, 0.0, 0.0} {}
  Point(double a, double b) : dim(2), x{a, b, 0.0} {}
  Point(double a, double b, double c) : dim(3), x{a, b, c} {}

  double operator[](int axis) const { return x[static_cast<std::size_t>(axis)]; }
  double& operator[](int axis) { return x[static_cast<std::size_t>(axis)]; }
};

/// One of the 2·D axis directions: axis index plus orientation.
struct SignedAxis {
  int axis = 0;
  int sign = +1;  // +1 or -1

  /// Slot index in per-direction arrays: 2·axis for -, 2·axis+1 for +.
  int slot() const { return 2 * axis + (sign > 0 ? 1 : 0); }
  static SignedAxis from_slot(int slot) { return {slot / 2, (slot % 2) ? +1 : -1}; }
};

/// Which sign of the raw level-set value Ω marks the interior.
enum class InsideConvention { PositiveInside, NegativeInside };

namespace shape {

/// Interior is the open interval (left, right).
struct Interval1D {
  double left = -0.3156;
  double right = 0.3156;
};

/// Interior: polar radius about `center` < base_radius + amplitude·sin(lobes·t).
struct Starfish2D {
  Point center{0.0, 0.0};
  double base_radius = 0.5;
  double amplitude = 0.2;
  int lobes = 5;
};

struct Sphere3D {
  Point center{0.5, 0.5, 0.5};
  double radius = 0.3;
};

/// Line through (anchor + θx·h·ex) and (anchor + θy·h·ey); interior contains anchor.
struct StraightLine2D {
  double theta_x = 1.0;
  double theta_y = 1.0;
  Point anchor{0.0, 0.0};
  double spacing = 1.0;
};

/// Interior: normal·p < offset.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

}  // namespace shape

using ShapeKind = std::variant<shape::Interval1D, shape::Starfish2D, shape::Sphere3D,
                               shape::StraightLine2D, shape::Halfspace>;

/// Embedded Dirichlet interface described by a level-set function.
///
/// Points with Ω exactly zero are exterior, so an axial crossing fraction θ
/// lies in (0, 1]. Instances are immutable after construction.
class LevelSetGeometry {
 public:
  explicit LevelSetGeometry(ShapeKind kind);

  static LevelSetGeometry interval(double left, double right);
  static LevelSetGeometry starfish(Point center, double base_radius, double amplitude, int lobes);
  static LevelSetGeometry sphere(Point center, double radius);
  static LevelSetGeometry halfspace(Point normal, double offset);

  int dimension() const { return dim_; }
  InsideConvention inside_convention() const { return convention_; }
  const ShapeKind& kind() const { return kind_; }
  std::string kind_name() const;

  /// Raw Ω with the shape's own sign convention.
  double level_set(const Point& p) const;

  /// Ω oriented so that interior is strictly positive.
  double interior_measure(const Point& p) const;

  bool inside(const Point& p) const;
  bool outside(const Point& p) const { return !inside(p); }

  /// Fraction θ ∈ (0,1] to the interface along `dir` when the neighbour at
  /// distance `spacing` is exterior; empty when the neighbour is interior.
  std::optional<double> axial_crossing(const Point& node, SignedAxis dir, double spacing) const;

 private:
  void check_dimension(const Point& p) const;

  ShapeKind kind_;
  int dim_ = 0;
  InsideConvention convention_ = InsideConvention::PositiveInside;
};

/// Straight-line stand-in for the local interface at a node cut along +x by
/// θx and along +y by θy.
LevelSetGeometry average_interface(double theta_x, double theta_y, Point anchor, double spacing);

/// Bisection settings for axial crossings.
inline constexpr int kCrossingMaxIterations = 200;
inline constexpr double kCrossingRelativeTolerance = 1e-12;

}  // namespace ebp
