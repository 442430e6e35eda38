#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ouspec/error.hpp"
#include "ouspec/grid.hpp"
#include "ouspec/measure.hpp"

using namespace ouspec;

TEST(GaussianDensity, Values) {
  EXPECT_NEAR(gaussian_density(Vec2{0, 0}), 1.0 / (2.0 * std::numbers::pi), 1e-16);
  EXPECT_NEAR(gaussian_density(0.0, 1), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(gaussian_density(Vec2{1, 1}), std::exp(-1.0) / (2.0 * std::numbers::pi), 1e-16);
  EXPECT_NEAR(gaussian_density(std::numbers::sqrt2, 2), 0.05854983152431917, 1e-16);
  EXPECT_THROW(gaussian_density(0.0, 3), Error);
}

TEST(NodeWeights, LargeSquareCarriesNearlyAllMass) {
  const ConvexPolygon k = rectangle(-6, 6, -6, 6);
  const EmbeddedGrid grid = build_grid(k, 0.05);
  const QuadratureWeights w = node_weights(grid, k);
  EXPECT_NEAR(w.total(), ouspec::testing::gaussian_measure_of_square(6.0), 1e-3);
  EXPECT_NEAR(w.total(), 1.0, 1e-3);
}

TEST(NodeWeights, ConvergesOnUnitSquare) {
  const ConvexPolygon k = rectangle(-1, 1, -1, 1);
  const double exact = ouspec::testing::gaussian_measure_of_square(1.0);
  double err[3];
  const double hs[3] = {0.1, 0.05, 0.025};
  for (int i = 0; i < 3; ++i) err[i] = std::abs(node_weights(build_grid(k, hs[i]), k).total() - exact);
  EXPECT_GE(std::log2(err[0] / err[1]), 1.5);
  EXPECT_GE(std::log2(err[1] / err[2]), 1.5);
}

TEST(NodeWeights, NonnegativeAndZeroOutside) {
  const ConvexPolygon k = random_convex_polygon(5, 7, 1.5, {0.2, -0.1});
  const EmbeddedGrid grid = build_grid(k, 0.05);
  const QuadratureWeights w = node_weights(grid, k);
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    EXPECT_GE(w.weight[n], 0.0);
    if (grid.node_class(n) == NodeClass::kExterior) EXPECT_EQ(w.weight[n], 0.0);
    else EXPECT_GT(w.weight[n], 0.0);
  }
}

TEST(NodeWeights, MonotoneUnderInclusion) {
  const ConvexPolygon outer = rectangle(-2, 2, -2, 2);
  const EmbeddedGrid grid = build_grid(outer, 0.05);
  const ConvexPolygon inner = random_convex_polygon(2, 6, 1.5, {0.1, 0.0});
  const QuadratureWeights wi = node_weights(grid, inner);
  const QuadratureWeights wo = node_weights(grid, outer);
  EXPECT_LE(wi.total(), wo.total());
  EXPECT_EQ(QuadratureWeights{}.total(), 0.0);
}

TEST(WeightedInner, Properties) {
  const ConvexPolygon k = rectangle(-3, 3, -3, 3);
  const EmbeddedGrid grid = build_grid(k, 0.05);
  const QuadratureWeights w = node_weights(grid, k);
  const std::vector<double> ones(grid.node_count(), 1.0);
  EXPECT_NEAR(weighted_inner(ones, ones, w), ouspec::testing::gaussian_measure_of_square(3.0), 1e-3);

  // Antisymmetric in x on an x-symmetric grid and body.
  std::vector<double> sign(grid.node_count());
  for (std::size_t n = 0; n < grid.node_count(); ++n) sign[n] = grid.position(n).x > 0 ? 1.0 : -1.0;
  EXPECT_NEAR(weighted_inner(sign, ones, w), 0.0, 1e-12);

  const std::vector<double> zeros(grid.node_count(), 0.0);
  EXPECT_EQ(weighted_inner(zeros, zeros, w), 0.0);
  EXPECT_DOUBLE_EQ(weighted_inner(sign, ones, w), weighted_inner(ones, sign, w));
  EXPECT_GE(weighted_inner(sign, sign, w), 0.0);

  const std::vector<double> short_vec(3, 1.0);
  try {
    weighted_inner(short_vec, short_vec, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}
