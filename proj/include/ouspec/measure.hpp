#pragma once

#include <span>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/grid.hpp"

namespace ouspec {

/// Standard Gaussian density (2 pi)^{-n/2} exp(-|x|^2 / 2) for n = 1 or 2.
double gaussian_density(double x, int n = 1);
double gaussian_density(Vec2 x);

/// Per-node quadrature weights for integrals against the Gaussian measure.
/// Nonnegative, and exactly zero on exterior nodes.
struct QuadratureWeights {
  std::vector<double> weight;

  double total() const;
};

/// Midpoint weights h^2 * gamma(node) for nodes inside `body`, scaled by the clipped area fraction
/// (4x4 subsampling against the signed distance) on cells the boundary may cross.
QuadratureWeights node_weights(const EmbeddedGrid& grid, const ConvexPolygon& body);

/// sum_i u_i v_i w_i. Throws kDimensionMismatch on length mismatch.
double weighted_inner(std::span<const double> u, std::span<const double> v, const QuadratureWeights& w);

}  // namespace ouspec
