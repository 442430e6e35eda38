#include "ouspec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ouspec/error.hpp"

namespace ouspec {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double mass_dot(std::span<const double> m, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += m[i] * a[i] * b[i];
  return s;
}

}  // namespace

CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            double rel_tol, int max_iterations) {
  const std::size_t n = a.rows;
  if (b.size() != n || x.size() != n) throw Error(ErrorCode::kDimensionMismatch, "CG vector sizes differ");
  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw Error(ErrorCode::kInnerSolveBreakdown, "non-positive diagonal in CG preconditioner");
    d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  a.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  double r_norm = std::sqrt(dot(r, r));
  if (r_norm <= rel_tol * b_norm) return {0, r_norm / b_norm};

  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iterations; ++it) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0) || !std::isfinite(pap)) {
      throw Error(ErrorCode::kInnerSolveBreakdown, "p^T A p = " + std::to_string(pap));
    }
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    r_norm = std::sqrt(dot(r, r));
    if (r_norm <= rel_tol * b_norm) return {it, r_norm / b_norm};
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  std::ostringstream msg;
  msg << "CG stalled at relative residual " << r_norm / b_norm << " after " << max_iterations << " iterations";
  throw Error(ErrorCode::kInnerSolveBreakdown, msg.str());
}

double rayleigh_quotient(const SparseOperatorPair& pair, std::span<const double> u) {
  if (u.size() != pair.size()) throw Error(ErrorCode::kDimensionMismatch, "vector length differs from operator size");
  const double denom = mass_dot(pair.mass, u, u);
  if (!(denom > 0.0)) throw Error(ErrorCode::kZeroVector, "Rayleigh quotient of a zero vector");
  const std::vector<double> au = pair.stiffness.multiply(u);
  return dot(u, au) / denom;
}

EigenSolution smallest_eigenpair(const SparseOperatorPair& pair, const SolverOptions& opts) {
  const std::size_t n = pair.size();
  if (n == 0) throw Error(ErrorCode::kZeroVector, "operator pair has no active nodes");
  const std::span<const double> mass = pair.mass;

  std::mt19937_64 gen(opts.seed);
  std::vector<double> x(n);
  for (double& v : x) v = 1.0 + 1e-3 * (2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0);

  auto m_normalize = [&](std::vector<double>& v) {
    const double s = std::sqrt(mass_dot(mass, v, v));
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::kInnerSolveBreakdown, "iterate lost its norm");
    for (double& e : v) e /= s;
  };
  m_normalize(x);

  EigenSolution sol;
  std::vector<double> ax = pair.stiffness.multiply(x);
  double lambda = dot(x, ax);
  sol.rayleigh_history.push_back(lambda);

  const double inner_tol = 0.01 * opts.tol;
  const int cg_cap = static_cast<int>(std::min<std::size_t>(20 * n + 200, 200000));
  std::vector<double> rhs(n), y(n);
  for (int it = 1; it <= opts.maxit; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = mass[i] * x[i];
      y[i] = x[i] / lambda;
    }
    conjugate_gradient(pair.stiffness, rhs, y, inner_tol, cg_cap);
    m_normalize(y);
    x.swap(y);

    pair.stiffness.multiply(x, ax);
    const double next = dot(x, ax);
    sol.rayleigh_history.push_back(next);
    double res2 = 0.0;
    double mx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mx = mass[i] * x[i];
      res2 += (ax[i] - next * mx) * (ax[i] - next * mx);
      mx2 += mx * mx;
    }
    const double residual = std::sqrt(res2 / mx2);
    const bool settled = std::abs(next - lambda) < opts.tol;
    lambda = next;
    if (settled && residual <= opts.tol) {
      sol.lambda = lambda;
      sol.residual_norm = residual;
      sol.iterations = it;
      const std::size_t anchor = pair.sign_anchor.value_or(static_cast<std::size_t>(
          std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) -
          x.begin()));
      if (x[anchor] < 0.0) {
        for (double& v : x) v = -v;
      }
      sol.u = std::move(x);
      return sol;
    }
  }
  std::ostringstream msg;
  msg << "inverse iteration did not converge in " << opts.maxit << " steps (last lambda " << lambda << ")";
  throw Error(ErrorCode::kNoConvergence, msg.str());
}

}  // namespace ouspec
