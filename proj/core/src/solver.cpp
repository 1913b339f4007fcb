#include "ebpoisson/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "ebpoisson/errors.hpp"

namespace ebp {

namespace {

using Method = SolveOptions::Method;

constexpr int kMaxRefinements = 5;
constexpr std::size_t kDenseLimit = 12000;

double norm2(std::span<const double> v) {
  long double acc = 0.0L;
  for (double x : v) acc += static_cast<long double>(x) * x;
  return static_cast<double>(std::sqrt(acc));
}

double dot(std::span<const double> a, std::span<const double> b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(acc);
}

std::vector<double> residual_vector(const SparseSystem& sys, std::span<const double> phi,
                                    std::span<const double> rhs) {
  std::vector<double> r = sys.multiply(phi);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  return r;
}

/// Dense LU with partial pivoting, row-major.
class DenseLU {
 public:
  explicit DenseLU(const SparseSystem& sys) : n_(sys.n_unknowns), a_(n_ * n_, 0.0), piv_(n_) {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t k = sys.row_ptr[r]; k < sys.row_ptr[r + 1]; ++k) {
        a_[r * n_ + sys.cols[k]] = sys.vals[k];
      }
    }
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      double best = std::abs(a_[k * n_ + k]);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double v = std::abs(a_[i * n_ + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0) throw SolverError("dense LU: matrix is singular");
      piv_[k] = p;
      if (p != k) {
        std::swap_ranges(a_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                         a_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_),
                         a_.begin() + static_cast<std::ptrdiff_t>(p * n_));
      }
      const double pivot = a_[k * n_ + k];
      for (std::size_t i = k + 1; i < n_; ++i) {
        double& l = a_[i * n_ + k];
        if (l == 0.0) continue;
        l /= pivot;
        const double f = l;
        double* row_i = &a_[i * n_];
        const double* row_k = &a_[k * n_];
        for (std::size_t j = k + 1; j < n_; ++j) row_i[j] -= f * row_k[j];
      }
    }
  }

  void solve_in_place(std::vector<double>& b) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(b[k], b[piv_[k]]);
      for (std::size_t i = k + 1; i < n_; ++i) b[i] -= a_[i * n_ + k] * b[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      double s = b[k];
      for (std::size_t j = k + 1; j < n_; ++j) s -= a_[k * n_ + j] * b[j];
      b[k] = s / a_[k * n_ + k];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
  std::vector<std::size_t> piv_;
};

/// Band LU with partial pivoting, LAPACK-style column storage with room for
/// kl extra superdiagonals of fill.
class BandedLU {
 public:
  explicit BandedLU(const SparseSystem& sys) : n_(sys.n_unknowns) {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t k = sys.row_ptr[r]; k < sys.row_ptr[r + 1]; ++k) {
        const std::size_t c = sys.cols[k];
        if (c < r) kl_ = std::max(kl_, r - c);
        if (c > r) ku_ = std::max(ku_, c - r);
      }
    }
    ld_ = 2 * kl_ + ku_ + 1;
    ab_.assign(ld_ * n_, 0.0);
    piv_.resize(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t k = sys.row_ptr[r]; k < sys.row_ptr[r + 1]; ++k) at(r, sys.cols[k]) = sys.vals[k];
    }
    factor();
  }

  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  void solve_in_place(std::vector<double>& b) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(b[k], b[piv_[k]]);
      const std::size_t km = std::min(kl_, n_ - 1 - k);
      for (std::size_t i = 1; i <= km; ++i) b[k + i] -= at(k + i, k) * b[k];
    }
    const std::size_t reach = kl_ + ku_;
    for (std::size_t k = n_; k-- > 0;) {
      double s = b[k];
      const std::size_t jend = std::min(n_ - 1, k + reach);
      for (std::size_t j = k + 1; j <= jend; ++j) s -= at(k, j) * b[j];
      b[k] = s / at(k, k);
    }
  }

 private:
  double& at(std::size_t i, std::size_t j) { return ab_[j * ld_ + (kl_ + ku_ + i - j)]; }
  double at(std::size_t i, std::size_t j) const { return ab_[j * ld_ + (kl_ + ku_ + i - j)]; }

  void factor() {
    const std::size_t reach = kl_ + ku_;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t km = std::min(kl_, n_ - 1 - k);
      std::size_t p = k;
      double best = std::abs(at(k, k));
      for (std::size_t i = 1; i <= km; ++i) {
        const double v = std::abs(at(k + i, k));
        if (v > best) {
          best = v;
          p = k + i;
        }
      }
      if (best == 0.0) throw SolverError("banded LU: matrix is singular");
      piv_[k] = p;
      const std::size_t ju = std::min(n_ - 1, k + reach);
      if (p != k) {
        for (std::size_t j = k; j <= ju; ++j) std::swap(at(k, j), at(p, j));
      }
      const double pivot = at(k, k);
      for (std::size_t i = 1; i <= km; ++i) at(k + i, k) /= pivot;
      for (std::size_t j = k + 1; j <= ju; ++j) {
        const double f = at(k, j);
        if (f == 0.0) continue;
        for (std::size_t i = 1; i <= km; ++i) at(k + i, j) -= at(k + i, k) * f;
      }
    }
  }

  std::size_t n_;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t ld_ = 0;
  std::vector<double> ab_;
  std::vector<std::size_t> piv_;
};

template <class Factorization>
Solution direct_solve(const SparseSystem& sys, std::span<const double> rhs, const SolveOptions& opt,
                      Method method, const Factorization& lu) {
  Solution sol;
  sol.method = method;
  sol.phi.assign(rhs.begin(), rhs.end());
  lu.solve_in_place(sol.phi);
  sol.relative_residual = relative_residual(sys, sol.phi, rhs);
  // Iterative refinement only when the first solve misses the tolerance.
  int sweeps = 0;
  while (sol.relative_residual > opt.relative_residual_tolerance && sweeps < kMaxRefinements) {
    std::vector<double> r = residual_vector(sys, sol.phi, rhs);
    lu.solve_in_place(r);
    std::vector<double> trial = sol.phi;
    for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += r[i];
    const double res = relative_residual(sys, trial, rhs);
    ++sweeps;
    if (!(res < sol.relative_residual)) break;
    sol.phi = std::move(trial);
    sol.relative_residual = res;
  }
  sol.iterations = static_cast<std::size_t>(sweeps);
  sol.note = "refinement sweeps: " + std::to_string(sweeps);
  if (sol.relative_residual > opt.relative_residual_tolerance) {
    throw NonConvergenceError("direct solve residual " + std::to_string(sol.relative_residual) +
                                  " above tolerance after refinement",
                              sol.relative_residual);
  }
  return sol;
}

std::vector<double> inverse_diagonal(const SparseSystem& sys) {
  std::vector<double> inv(sys.n_unknowns);
  for (std::size_t r = 0; r < sys.n_unknowns; ++r) {
    const double d = sys.coefficient(r, r);
    if (d == 0.0) throw SolverError("zero diagonal entry; Jacobi preconditioner undefined");
    inv[r] = 1.0 / d;
  }
  return inv;
}

std::size_t iteration_cap(const SolveOptions& opt, std::size_t n) {
  if (opt.max_iterations > 0) return opt.max_iterations;
  return std::max<std::size_t>(1000, 20 * n);
}

/// Preconditioned CG on the SPD system (-A) φ = -b.
Solution conjugate_gradient(const SparseSystem& sys, std::span<const double> rhs,
                            const SolveOptions& opt) {
  if (!sys.symmetric) {
    throw UsageError("conjugate gradient requires a symmetric system (linear scheme)");
  }
  const std::size_t n = sys.n_unknowns;
  const std::size_t cap = iteration_cap(opt, n);
  const double tol = opt.relative_residual_tolerance;
  const double bnorm = norm2(rhs);
  Solution sol;
  sol.method = Method::ConjugateGradient;
  sol.phi.assign(n, 0.0);
  if (bnorm == 0.0) return sol;

  // M⁻¹ for -A is -1/diag(A), positive for a negative-definite A.
  std::vector<double> minv = inverse_diagonal(sys);
  for (double& v : minv) v = -v;

  std::vector<double> r(rhs.begin(), rhs.end());
  for (double& v : r) v = -v;  // residual of (-A)x = -b at x = 0
  std::vector<double> z(n), p(n), q(n);
  double best = 1.0;
  std::size_t it = 0;
  while (it < cap) {
    for (std::size_t i = 0; i < n; ++i) z[i] = minv[i] * r[i];
    p = z;
    double rz = dot(r, z);
    for (; it < cap; ++it) {
      sys.multiply(p, q);
      for (double& v : q) v = -v;
      const double pq = dot(p, q);
      if (!(pq > 0.0)) throw SolverError("conjugate gradient: operator is not negative definite");
      const double alpha = rz / pq;
      for (std::size_t i = 0; i < n; ++i) {
        sol.phi[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      const double rel = norm2(r) / bnorm;
      if (opt.verbose && it % 100 == 0) std::clog << "cg " << it << " residual " << rel << '\n';
      if (rel <= tol) {
        ++it;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) z[i] = minv[i] * r[i];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    // Confirm with the true residual; restart from it if recursion drifted.
    sol.relative_residual = relative_residual(sys, sol.phi, rhs);
    best = std::min(best, sol.relative_residual);
    if (sol.relative_residual <= tol) break;
    r = residual_vector(sys, sol.phi, rhs);
    for (double& v : r) v = -v;
  }
  sol.iterations = it;
  if (sol.relative_residual > tol) {
    throw NonConvergenceError("conjugate gradient did not converge in " + std::to_string(cap) +
                                  " iterations",
                              best);
  }
  return sol;
}

/// Right-Jacobi-preconditioned BiCGStab.
Solution bicgstab(const SparseSystem& sys, std::span<const double> rhs, const SolveOptions& opt) {
  const std::size_t n = sys.n_unknowns;
  const std::size_t cap = iteration_cap(opt, n);
  const double tol = opt.relative_residual_tolerance;
  const double bnorm = norm2(rhs);
  Solution sol;
  sol.method = Method::StabilizedBiCG;
  sol.phi.assign(n, 0.0);
  if (bnorm == 0.0) return sol;

  const std::vector<double> minv = inverse_diagonal(sys);
  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> r0(n), p(n), v(n), s(n), t(n), ph(n), sh(n);
  double best = 1.0;
  std::size_t it = 0;
  while (it < cap) {
    r0 = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    bool restart = false;
    for (; it < cap; ++it) {
      const double rho_next = dot(r0, r);
      if (rho_next == 0.0 || omega == 0.0) {
        restart = true;
        break;
      }
      const double beta = (rho_next / rho) * (alpha / omega);
      rho = rho_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
      for (std::size_t i = 0; i < n; ++i) ph[i] = minv[i] * p[i];
      sys.multiply(ph, v);
      const double r0v = dot(r0, v);
      if (r0v == 0.0) {
        restart = true;
        break;
      }
      alpha = rho / r0v;
      for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
      if (norm2(s) / bnorm <= tol) {
        for (std::size_t i = 0; i < n; ++i) sol.phi[i] += alpha * ph[i];
        r = s;
        ++it;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) sh[i] = minv[i] * s[i];
      sys.multiply(sh, t);
      const double tt = dot(t, t);
      omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sol.phi[i] += alpha * ph[i] + omega * sh[i];
        r[i] = s[i] - omega * t[i];
      }
      const double rel = norm2(r) / bnorm;
      if (opt.verbose && it % 100 == 0) std::clog << "bicgstab " << it << " residual " << rel << '\n';
      if (rel <= tol) {
        ++it;
        break;
      }
    }
    sol.relative_residual = relative_residual(sys, sol.phi, rhs);
    best = std::min(best, sol.relative_residual);
    if (sol.relative_residual <= tol) break;
    r = residual_vector(sys, sol.phi, rhs);
    if (restart && it >= cap) break;
  }
  sol.iterations = it;
  if (sol.relative_residual > tol) {
    throw NonConvergenceError("BiCGStab did not converge in " + std::to_string(cap) + " iterations",
                              best);
  }
  return sol;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::Auto:
      return "auto";
    case Method::DirectDense:
      return "dense";
    case Method::DirectBanded:
      return "banded";
    case Method::ConjugateGradient:
      return "cg";
    case Method::StabilizedBiCG:
      return "bicgstab";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "dense") return Method::DirectDense;
  if (name == "banded") return Method::DirectBanded;
  if (name == "cg") return Method::ConjugateGradient;
  if (name == "bicgstab") return Method::StabilizedBiCG;
  throw UsageError("unknown solver '" + name + "' (expected auto|dense|banded|cg|bicgstab)");
}

Method resolve_method(Method method, int dimension, bool symmetric) {
  if (method != Method::Auto) return method;
  if (dimension <= 2) return Method::DirectBanded;
  return symmetric ? Method::ConjugateGradient : Method::StabilizedBiCG;
}

double relative_residual(const SparseSystem& system, std::span<const double> phi,
                         std::span<const double> rhs) {
  const std::vector<double> r = residual_vector(system, phi, rhs);
  const double bnorm = norm2(rhs);
  const double rnorm = norm2(r);
  return bnorm > 0.0 ? rnorm / bnorm : rnorm;
}

Solution solve(const SparseSystem& system, std::span<const double> rhs, const SolveOptions& options,
               int dimension) {
  if (rhs.size() != system.n_unknowns) throw UsageError("solve: RHS length mismatch");
  const double tol = options.relative_residual_tolerance;
  if (!(tol > 0.0 && tol <= 1e-6)) throw UsageError("solve: tolerance must lie in (0, 1e-6]");
  if (system.n_unknowns == 0) {
    Solution empty;
    empty.method = options.method;
    return empty;
  }
  const Method method = resolve_method(options.method, dimension, system.symmetric);
  switch (method) {
    case Method::DirectDense: {
      if (system.n_unknowns > kDenseLimit) {
        throw UsageError("dense solver limited to " + std::to_string(kDenseLimit) + " unknowns");
      }
      const DenseLU lu(system);
      return direct_solve(system, rhs, options, method, lu);
    }
    case Method::DirectBanded: {
      const BandedLU lu(system);
      Solution sol = direct_solve(system, rhs, options, method, lu);
      sol.note += ", bandwidth " + std::to_string(lu.lower()) + "/" + std::to_string(lu.upper());
      return sol;
    }
    case Method::ConjugateGradient:
      return conjugate_gradient(system, rhs, options);
    case Method::StabilizedBiCG:
      return bicgstab(system, rhs, options);
    case Method::Auto:
      break;
  }
  throw UsageError("solve: unresolved method");
}

}  // namespace ebp
