#include "ebpoisson/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {
constexpr double kNoCut = std::numeric_limits<double>::quiet_NaN();
}

Mesh::Mesh(int dim, std::array<int, 3> counts, Point origin, std::array<double, 3> spacing)
    : dim_(dim), counts_(counts), origin_(origin), spacing_(spacing), num_nodes_(1) {
  if (dim < 1 || dim > 3) throw UsageError("mesh dimension must be 1, 2 or 3");
  if (origin.dim != dim) throw UsageError("mesh origin dimension mismatch");
  for (int a = 0; a < 3; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (a < dim) {
      if (counts_[ua] < 3) throw UsageError("mesh needs at least 3 nodes per axis");
      if (!(spacing_[ua] > 0.0)) throw UsageError("mesh spacing must be positive");
      num_nodes_ *= static_cast<std::size_t>(counts_[ua]);
    } else {
      counts_[ua] = 1;
      spacing_[ua] = 0.0;
    }
  }
}

Mesh Mesh::box(int dim, double lo, double hi, int nodes) {
  if (!(hi > lo)) throw UsageError("mesh box: hi must exceed lo");
  if (nodes < 3) throw UsageError("mesh needs at least 3 nodes per axis");
  const double h = (hi - lo) / (nodes - 1);
  Point origin;
  origin.dim = dim;
  std::array<int, 3> counts{1, 1, 1};
  std::array<double, 3> spacing{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    origin[a] = lo;
    counts[static_cast<std::size_t>(a)] = nodes;
    spacing[static_cast<std::size_t>(a)] = h;
  }
  return Mesh(dim, counts, origin, spacing);
}

std::size_t Mesh::linear(const NodeIndex& idx) const {
  // x fastest: lexicographic with the last axis slowest.
  return static_cast<std::size_t>(idx[0]) +
         static_cast<std::size_t>(counts_[0]) *
             (static_cast<std::size_t>(idx[1]) +
              static_cast<std::size_t>(counts_[1]) * static_cast<std::size_t>(idx[2]));
}

NodeIndex Mesh::multi(std::size_t n) const {
  NodeIndex idx{0, 0, 0};
  idx[0] = static_cast<int>(n % static_cast<std::size_t>(counts_[0]));
  n /= static_cast<std::size_t>(counts_[0]);
  idx[1] = static_cast<int>(n % static_cast<std::size_t>(counts_[1]));
  idx[2] = static_cast<int>(n / static_cast<std::size_t>(counts_[1]));
  return idx;
}

bool Mesh::contains(const NodeIndex& idx) const {
  for (int a = 0; a < 3; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (idx[ua] < 0 || idx[ua] >= counts_[ua]) return false;
  }
  return true;
}

Point Mesh::position(const NodeIndex& idx) const {
  Point p;
  p.dim = dim_;
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    p[a] = std::fma(static_cast<double>(idx[ua]), spacing_[ua], origin_[a]);
  }
  return p;
}

std::optional<NodeIndex> Mesh::neighbour(const NodeIndex& idx, SignedAxis dir) const {
  NodeIndex n = idx;
  n[static_cast<std::size_t>(dir.axis)] += dir.sign;
  if (!contains(n)) return std::nullopt;
  return n;
}

NodeClassification::NodeClassification(const Mesh& mesh, std::vector<NodeStatus> status,
                                       std::vector<std::array<double, 6>> theta,
                                       std::size_t isolated)
    : mesh_(mesh),
      status_(std::move(status)),
      theta_(std::move(theta)),
      unknown_of_(status_.size(), -1),
      isolated_(isolated) {
  for (std::size_t n = 0; n < status_.size(); ++n) {
    if (!interior(n)) continue;
    unknown_of_[n] = static_cast<std::int64_t>(node_of_.size());
    node_of_.push_back(n);
    ++num_interior_;
    if (near_boundary(n)) ++num_near_boundary_;
  }
}

std::optional<double> NodeClassification::theta(std::size_t node, SignedAxis dir) const {
  const double t = theta_[node][static_cast<std::size_t>(dir.slot())];
  if (std::isnan(t)) return std::nullopt;
  return t;
}

bool NodeClassification::near_boundary(std::size_t node) const {
  if (!interior(node)) return false;
  for (int s = 0; s < 2 * mesh_.dimension(); ++s) {
    if (!std::isnan(theta_[node][static_cast<std::size_t>(s)])) return true;
  }
  return false;
}

bool NodeClassification::trapped_along(std::size_t node, int axis) const {
  return theta(node, {axis, -1}).has_value() && theta(node, {axis, +1}).has_value();
}

std::size_t NodeClassification::num_trapped() const {
  std::size_t count = 0;
  for (std::size_t n = 0; n < status_.size(); ++n) {
    if (!interior(n)) continue;
    for (int a = 0; a < mesh_.dimension(); ++a) {
      if (trapped_along(n, a)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

NodeClassification classify(const Mesh& mesh, const LevelSetGeometry& geometry) {
  if (mesh.dimension() != geometry.dimension()) {
    throw UsageError("classify: mesh is " + std::to_string(mesh.dimension()) +
                     "-D but geometry is " + std::to_string(geometry.dimension()) + "-D");
  }
  const std::size_t n_nodes = mesh.num_nodes();
  const int dim = mesh.dimension();

  std::vector<NodeStatus> status(n_nodes, NodeStatus::Exterior);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    if (geometry.inside(mesh.position(n))) status[n] = NodeStatus::Interior;
  }

  std::array<double, 6> uncut;
  uncut.fill(kNoCut);
  std::vector<std::array<double, 6>> theta(n_nodes, uncut);
  std::size_t isolated = 0;

  for (std::size_t n = 0; n < n_nodes; ++n) {
    if (status[n] != NodeStatus::Interior) continue;
    const NodeIndex idx = mesh.multi(n);
    const Point p = mesh.position(idx);
    int cut_count = 0;
    for (int s = 0; s < 2 * dim; ++s) {
      const SignedAxis dir = SignedAxis::from_slot(s);
      const auto nb = mesh.neighbour(idx, dir);
      if (!nb) {
        throw UsageError("classify: geometry interior reaches the mesh edge; enlarge the mesh");
      }
      if (status[mesh.linear(*nb)] == NodeStatus::Interior) continue;
      const auto t = geometry.axial_crossing(p, dir, mesh.spacing(dir.axis));
      if (!t) {
        throw GeometryError("classify: exterior neighbour but no interface crossing found");
      }
      theta[n][static_cast<std::size_t>(s)] = *t;
      ++cut_count;
    }
    if (cut_count == 2 * dim) {
      // Every neighbour exterior: no usable stencil in either scheme.
      status[n] = NodeStatus::Exterior;
      theta[n] = uncut;
      ++isolated;
    }
  }
  return NodeClassification(mesh, std::move(status), std::move(theta), isolated);
}

std::vector<ThetaMapEntry> theta_map(const NodeClassification& classification) {
  const Mesh& mesh = classification.mesh();
  std::vector<ThetaMapEntry> out;
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    if (!classification.near_boundary(n)) continue;
    ThetaMapEntry entry;
    entry.index = mesh.multi(n);
    for (int a = 0; a < mesh.dimension(); ++a) {
      const auto lo = classification.theta(n, {a, -1});
      const auto hi = classification.theta(n, {a, +1});
      double t = 1.0;
      if (lo && hi) {
        t = std::min(*lo, *hi);
        entry.trapped = true;
      } else if (lo) {
        t = *lo;
      } else if (hi) {
        t = *hi;
      }
      entry.theta[static_cast<std::size_t>(a)] = t;
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace ebp
