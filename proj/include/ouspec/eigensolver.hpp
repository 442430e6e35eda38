#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ouspec/discretization.hpp"

namespace ouspec {

struct SolverOptions {
  double tol = 1e-9;
  int maxit = 500;
  std::uint64_t seed = 0;
};

/// Smallest generalized eigenpair. `u` is positive at the sign anchor and
/// satisfies u^T M u = 1.
struct EigenSolution {
  double lambda = 0.0;
  std::vector<double> u;
  /// ||A u - lambda M u|| / ||M u||.
  double residual_norm = 0.0;
  int iterations = 0;
  /// Rayleigh quotient after each outer step (index 0 is the start vector).
  std::vector<double> rayleigh_history;
};

/// Inverse power iteration; each step solves A y = M x by Jacobi-preconditioned
/// conjugate gradients to 0.01 * tol, warm-started from x / lambda.
/// Stops once successive Rayleigh quotients differ by less than tol and the
/// residual is at most tol. Throws kNoConvergence or kInnerSolveBreakdown.
EigenSolution smallest_eigenpair(const SparseOperatorPair& pair, const SolverOptions& opts = {});

/// (u^T A u) / (u^T M u). Throws kZeroVector, kDimensionMismatch.
double rayleigh_quotient(const SparseOperatorPair& pair, std::span<const double> u);

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A x = b in place (x holds the initial guess) with a Jacobi
/// preconditioner until ||r|| <= rel_tol ||b||.
CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            double rel_tol, int max_iterations);

}  // namespace ouspec
