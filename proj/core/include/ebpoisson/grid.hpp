#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ebpoisson/geometry.hpp"

namespace ebp {

using NodeIndex = std::array<int, 3>;

/// Uniform Cartesian mesh of nodes. counts[a] is the number of nodes along
/// axis a (N+1 in the usual notation).
class Mesh {
 public:
  Mesh(int dim, std::array<int, 3> counts, Point origin, std::array<double, 3> spacing);

  /// Nodes spanning the box [lo, hi] with `nodes` nodes per axis.
  static Mesh box(int dim, double lo, double hi, int nodes);

  int dimension() const { return dim_; }
  int count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  const Point& origin() const { return origin_; }
  std::size_t num_nodes() const { return num_nodes_; }

  std::size_t linear(const NodeIndex& idx) const;
  NodeIndex multi(std::size_t linear_index) const;
  bool contains(const NodeIndex& idx) const;
  Point position(const NodeIndex& idx) const;
  Point position(std::size_t linear_index) const { return position(multi(linear_index)); }

  /// Index of the neighbour along `dir`; empty when it falls off the mesh.
  std::optional<NodeIndex> neighbour(const NodeIndex& idx, SignedAxis dir) const;

 private:
  int dim_;
  std::array<int, 3> counts_;
  Point origin_;
  std::array<double, 3> spacing_;
  std::size_t num_nodes_;
};

enum class NodeStatus : std::uint8_t { Exterior, Interior };

/// Interior/exterior labels plus the cached per-direction crossing fractions.
///
/// θ slots follow SignedAxis::slot(); NaN marks an uncut direction.
class NodeClassification {
 public:
  NodeClassification(const Mesh& mesh, std::vector<NodeStatus> status,
                     std::vector<std::array<double, 6>> theta, std::size_t isolated);

  const Mesh& mesh() const { return mesh_; }
  NodeStatus status(std::size_t node) const { return status_[node]; }
  bool interior(std::size_t node) const { return status_[node] == NodeStatus::Interior; }
  std::optional<double> theta(std::size_t node, SignedAxis dir) const;
  bool near_boundary(std::size_t node) const;
  bool trapped_along(std::size_t node, int axis) const;

  std::size_t num_interior() const { return num_interior_; }
  std::size_t num_near_boundary() const { return num_near_boundary_; }
  std::size_t num_trapped() const;

  /// Interior nodes are numbered lexicographically (x fastest); -1 for exterior.
  std::int64_t unknown_of(std::size_t node) const { return unknown_of_[node]; }
  std::size_t node_of(std::size_t unknown) const { return node_of_[unknown]; }
  const std::vector<std::size_t>& interior_nodes() const { return node_of_; }
  /// Interior-by-level-set nodes demoted because every axial neighbour was exterior.
  std::size_t isolated_reclassified() const { return isolated_; }

 private:
  Mesh mesh_;
  std::vector<NodeStatus> status_;
  std::vector<std::array<double, 6>> theta_;
  std::vector<std::int64_t> unknown_of_;
  std::vector<std::size_t> node_of_;
  std::size_t num_interior_ = 0;
  std::size_t num_near_boundary_ = 0;
  std::size_t isolated_ = 0;
};

NodeClassification classify(const Mesh& mesh, const LevelSetGeometry& geometry);

struct ThetaMapEntry {
  NodeIndex index{};
  std::array<double, 3> theta{1.0, 1.0, 1.0};
  bool trapped = false;
};

/// One entry per near-boundary node: per-axis θ of the cut side, 1 when the
/// axis is uncut, the smaller of the two when trapped.
std::vector<ThetaMapEntry> theta_map(const NodeClassification& classification);

}  // namespace ebp
