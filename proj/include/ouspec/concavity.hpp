#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/grid.hpp"

namespace ouspec {

/// w = -ln(max(u, floor)) on grid nodes; `excluded` marks nodes with u < floor
/// (including every inactive node, where u = 0).
struct LogField {
  std::vector<double> w;
  std::vector<bool> excluded;
};

LogField log_transform(std::span<const double> u, double floor);

/// Default floor: 1e-12 * max(u).
LogField log_transform(std::span<const double> u);

struct NodeHessian {
  std::size_t node = 0;
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double trace() const { return xx + yy; }
  /// Closed-form eigenvalues, ascending.
  std::array<double, 2> eigenvalues() const;
};

/// Centered second differences at nodes whose 5x5 neighborhood is INTERIOR
/// and not excluded; other nodes are skipped.
std::vector<NodeHessian> hessian_field(const LogField& w, const EmbeddedGrid& grid);

/// Nodes at signed distance <= -margin with a full 5x5 INTERIOR neighborhood.
/// Throws kMarginTooSmall when margin < 3h.
std::vector<std::size_t> sample_nodes(const LogField& w, const EmbeddedGrid& grid, const ConvexPolygon& body,
                                      double margin);

/// sup over sample nodes of |lap w - lambda - |grad w|^2 - (x, grad w)|.
double pde2_residual(double lambda, const LogField& w, const EmbeddedGrid& grid, const ConvexPolygon& body,
                     double margin);

struct ConcavitySample {
  Vec2 position;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double trace = 0.0;
  /// (x, grad w)
  double radial_drift = 0.0;
  double residual = 0.0;
  int rank = 0;
};

struct ConcavityReport {
  double margin = 0.0;
  double rank_tol = 0.0;
  std::size_t sample_count = 0;
  double min_lambda_min = 0.0;
  double max_lambda_max = 0.0;
  /// rank_histogram[r] = number of samples of Hessian rank r.
  std::array<std::size_t, 3> rank_histogram{};
  double residual_sup = 0.0;
  double trace_min = 0.0;
  /// trace >= lambda - residual_sup wherever (x, grad w) >= 0.
  bool trace_bound_holds = true;
  std::vector<ConcavitySample> samples;

  void write_summary(const std::string& path) const;
  void write_samples_csv(const std::string& path) const;
};

/// Hessian eigenvalue, rank and residual profile of w = -ln u on the margin
/// set. `u` is a node field. Throws kMarginTooSmall, kNoEligibleSamples.
ConcavityReport concavity_report(double lambda, std::span<const double> u, const EmbeddedGrid& grid,
                                 const ConvexPolygon& body, double margin, double rank_tol = 1e-6);

}  // namespace ouspec
