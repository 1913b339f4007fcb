#include "ebpoisson/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "ebpoisson/errors.hpp"

namespace ebp {

LinearGhost ghost_linear(double theta) {
  if (!(theta > 0.0)) throw UsageError("ghost_linear: theta must be positive");
  return {(theta - 1.0) / theta, 1.0 / theta};
}

QuadraticGhost ghost_quadratic(double theta) {
  if (!(theta > 0.0)) throw UsageError("ghost_quadratic: theta must be positive");
  return {2.0 / (theta * theta + theta), (2.0 * theta - 2.0) / theta,
          (1.0 - theta) / (1.0 + theta)};
}

double SparseSystem::coefficient(std::size_t r, std::size_t c) const {
  const auto rc = row_cols(r);
  const auto it = std::lower_bound(rc.begin(), rc.end(), c);
  if (it == rc.end() || *it != c) return 0.0;
  return vals[row_ptr[r] + static_cast<std::size_t>(it - rc.begin())];
}

void SparseSystem::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_unknowns || y.size() != n_unknowns) {
    throw UsageError("SparseSystem::multiply: size mismatch");
  }
  for (std::size_t r = 0; r < n_unknowns; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseSystem::multiply(std::span<const double> x) const {
  std::vector<double> y(n_unknowns);
  multiply(x, y);
  return y;
}

bool SparseSystem::is_exactly_symmetric() const {
  for (std::size_t r = 0; r < n_unknowns; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::size_t c = cols[k];
      const auto cc = row_cols(c);
      const auto it = std::lower_bound(cc.begin(), cc.end(), r);
      if (it == cc.end() || *it != r) return false;
      if (vals[row_ptr[c] + static_cast<std::size_t>(it - cc.begin())] != vals[k]) return false;
    }
  }
  return true;
}

std::vector<double> SparseSystem::rhs_vector(std::span<const double> rhs) const {
  if (rhs.size() != n_unknowns) throw UsageError("rhs_vector: size mismatch");
  std::vector<double> out(n_unknowns);
  for (std::size_t r = 0; r < n_unknowns; ++r) out[r] = rhs[r] + rhs_boundary[r];
  return out;
}

void SparseSystem::write_matrix_market(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << n_unknowns << ' ' << n_unknowns << ' ' << vals.size() << '\n';
  for (std::size_t r = 0; r < n_unknowns; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      os << (r + 1) << ' ' << (cols[k] + 1) << ' ' << vals[k] << '\n';
    }
  }
  os.precision(old_precision);
}

Point crossing_point(const Mesh& mesh, std::size_t node, SignedAxis dir, double theta) {
  Point p = mesh.position(node);
  p[dir.axis] = std::fma(theta * mesh.spacing(dir.axis), static_cast<double>(dir.sign), p[dir.axis]);
  return p;
}

SparseSystem assemble(const NodeClassification& classification, SchemeKind scheme,
                      const PointFunction& dirichlet) {
  const Mesh& mesh = classification.mesh();
  const int dim = mesh.dimension();
  const auto& nodes = classification.interior_nodes();

  SparseSystem sys;
  sys.n_unknowns = nodes.size();
  sys.node_of_unknown = nodes;
  sys.rhs_boundary.assign(nodes.size(), 0.0);
  sys.row_ptr.reserve(nodes.size() + 1);
  sys.row_ptr.push_back(0);

  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const std::size_t n = nodes[r];
    const NodeIndex idx = mesh.multi(n);
    row.clear();
    double diag = 0.0;
    double boundary = 0.0;

    for (int a = 0; a < dim; ++a) {
      const double inv_h2 = 1.0 / (mesh.spacing(a) * mesh.spacing(a));
      diag -= 2.0 * inv_h2;
      const bool trapped = classification.trapped_along(n, a);
      for (int sign : {-1, +1}) {
        const SignedAxis dir{a, sign};
        const auto theta = classification.theta(n, dir);
        if (!theta) {
          const auto nb = mesh.neighbour(idx, dir);
          row.emplace_back(static_cast<std::size_t>(classification.unknown_of(mesh.linear(*nb))),
                           inv_h2);
          continue;
        }
        const double phi_d = dirichlet(crossing_point(mesh, n, dir, *theta));

        bool use_linear = scheme.is_linear();
        bool naive_back = false;
        if (!use_linear) {
          const SignedAxis back_dir{a, -sign};
          if (!mesh.neighbour(idx, back_dir)) {
            throw AssemblyError("quadratic ghost at node " + std::to_string(n) +
                                " has no back stencil point on the mesh");
          }
          if (trapped) {
            if (scheme.fallback_enabled) {
              use_linear = true;
              ++sys.fallback_count;
            } else {
              naive_back = true;
              ++sys.trapped_count;
            }
          }
        }

        if (use_linear) {
          const LinearGhost g = ghost_linear(*theta);
          diag += inv_h2 * g.self_coeff_delta;
          boundary -= inv_h2 * g.dirichlet_coeff * phi_d;
          continue;
        }
        const QuadraticGhost g = ghost_quadratic(*theta);
        diag += inv_h2 * g.self_coeff;
        boundary -= inv_h2 * g.dirichlet_coeff * phi_d;
        // An exterior back node carries no unknown and reads as zero potential.
        if (!naive_back) {
          const auto back = mesh.neighbour(idx, {a, -sign});
          row.emplace_back(
              static_cast<std::size_t>(classification.unknown_of(mesh.linear(*back))),
              inv_h2 * g.back_coeff);
        }
      }
    }
    row.emplace_back(r, diag);
    std::sort(row.begin(), row.end(),
              [](const auto& l, const auto& rr) { return l.first < rr.first; });
    // Merge duplicates (a back node may coincide with a plain neighbour).
    std::size_t start = sys.cols.size();
    for (const auto& [c, v] : row) {
      if (sys.cols.size() > start && sys.cols.back() == c) {
        sys.vals.back() += v;
      } else {
        sys.cols.push_back(c);
        sys.vals.push_back(v);
      }
    }
    sys.row_ptr.push_back(sys.cols.size());
    sys.rhs_boundary[r] = boundary;
  }
  sys.symmetric = scheme.is_linear();
  return sys;
}

AssembledProblem assemble(const NodeClassification& classification, SchemeKind scheme,
                          const PointFunction& dirichlet, const RhsField& rhs) {
  if (rhs.values.size() != classification.num_interior()) {
    throw UsageError("assemble: RHS field does not cover the interior nodes");
  }
  AssembledProblem out{assemble(classification, scheme, dirichlet), {}};
  out.rhs_vector = out.system.rhs_vector(rhs.values);
  return out;
}

}  // namespace ebp
