#pragma once

#include <span>
#include <string>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/pipeline.hpp"

namespace ouspec {

struct BMEntry {
  double t = 0.0;
  double lambda = 0.0;
  /// (1 - t) lambda_0 + t lambda_1
  double bound = 0.0;
  /// bound - lambda; nonnegative when the inequality holds.
  double gap = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct BMSweepResult {
  /// Sorted by t, including the endpoints t = 0 and t = 1.
  std::vector<BMEntry> entries;
  double h = 0.0;
  double solver_tol = 0.0;
  /// max |h_{K_t} - ((1-t) h_0 + t h_1)| over the direction grid and all t.
  double support_error = 0.0;
  std::vector<Vec2> body0;
  std::vector<Vec2> body1;

  double lambda0() const { return entries.front().lambda; }
  double lambda1() const { return entries.back().lambda; }
  double min_gap() const;

  /// Columns t, lambda_t, bound_t, gap_t, residual.
  void write_csv(const std::string& path) const;
};

/// max(1e-3, 5 |lambda_0| h^2): allowance for discretization bias in a gap.
double bm_tolerance(double lambda0, double h);

/// Solves K_t = (1-t) K0 + t K1 for each interior t (strictly increasing in
/// (0,1)); endpoints are solved once. Per-t solves may run concurrently
/// (OUSPEC_THREADS). Throws kInvalidT; solver errors name the failing t.
BMSweepResult sweep(const ConvexPolygon& k0, const ConvexPolygon& k1, std::span<const double> tvals,
                    const SolverConfig& cfg);

/// Sweep of the translate family K, K + v.
BMSweepResult equality_probe(const ConvexPolygon& body, Vec2 shift, std::span<const double> tvals,
                             const SolverConfig& cfg);

/// max over t of the vertex distance between K_t and translate(K, t v), after
/// aligning the cyclic vertex order. Purely geometric.
double translate_family_error(const ConvexPolygon& body, Vec2 shift, std::span<const double> tvals);

struct MonotonicityResult {
  double lambda_inner = 0.0;
  double lambda_outer = 0.0;
  double tolerance = 0.0;
  /// lambda_inner >= lambda_outer - tolerance
  bool holds = false;
};

/// Throws kNotNested unless h_inner <= h_outer on 360 directions.
MonotonicityResult monotonicity_check(const ConvexPolygon& inner, const ConvexPolygon& outer,
                                      const SolverConfig& cfg);

}  // namespace ouspec
