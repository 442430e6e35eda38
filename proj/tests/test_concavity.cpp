#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "ouspec/concavity.hpp"
#include "ouspec/error.hpp"
#include "ouspec/pipeline.hpp"

using namespace ouspec;

namespace {

// Node field f(x) on the active set of the grid, zero elsewhere.
std::vector<double> sample(const EmbeddedGrid& g, const std::function<double(Vec2)>& f) {
  std::vector<double> out(g.node_count(), 0.0);
  for (const std::size_t n : g.active_nodes()) out[n] = f(g.position(n));
  return out;
}

LogField raw_field(const EmbeddedGrid& g, const std::function<double(Vec2)>& w) {
  LogField lf{std::vector<double>(g.node_count(), 0.0), std::vector<bool>(g.node_count(), true)};
  for (const std::size_t n : g.active_nodes()) {
    lf.w[n] = w(g.position(n));
    lf.excluded[n] = false;
  }
  return lf;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ouspec::Error";
  return ErrorCode::kIo;
}

SolverConfig config(double h) {
  SolverConfig c;
  c.h = h;
  return c;
}

const ConvexPolygon kSquare = rectangle(-1, 1, -1, 1);

}  // namespace

TEST(LogTransform, Examples) {
  const std::vector<double> ones(5, 1.0);
  const LogField a = log_transform(ones, 1e-12);
  for (const double w : a.w) EXPECT_EQ(w, 0.0);
  for (const bool e : a.excluded) EXPECT_FALSE(e);

  const EmbeddedGrid g = build_grid(kSquare, 0.1);
  const std::vector<double> u = sample(g, [](Vec2 x) { return std::exp(-0.5 * dot(x, x)); });
  const LogField b = log_transform(u, 1e-12);
  for (const std::size_t n : g.active_nodes()) {
    const Vec2 x = g.position(n);
    EXPECT_NEAR(b.w[n], 0.5 * dot(x, x), 1e-15);
  }
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.active_index(n) < 0) EXPECT_TRUE(b.excluded[n]);
  }
}

TEST(HessianField, QuadraticIsExact) {
  const EmbeddedGrid g = build_grid(kSquare, 0.05);
  const std::vector<NodeHessian> hs = hessian_field(raw_field(g, [](Vec2 x) { return 0.5 * dot(x, x); }), g);
  ASSERT_FALSE(hs.empty());
  for (const NodeHessian& hn : hs) {
    EXPECT_NEAR(hn.xx, 1.0, 1e-10);
    EXPECT_NEAR(hn.yy, 1.0, 1e-10);
    EXPECT_NEAR(hn.xy, 0.0, 1e-10);
  }
}

TEST(HessianField, DegenerateDirectionHasRankOne) {
  const EmbeddedGrid g = build_grid(kSquare, 0.05);
  for (const NodeHessian& hn : hessian_field(raw_field(g, [](Vec2 x) { return x.x * x.x; }), g)) {
    const auto eig = hn.eigenvalues();
    EXPECT_NEAR(eig[0], 0.0, 1e-9);
    EXPECT_NEAR(eig[1], 2.0, 1e-9);
    const double thr = 1e-6 * (1.0 + std::abs(hn.trace()));
    EXPECT_EQ((eig[0] > thr) + (eig[1] > thr), 1);
  }
}

TEST(HessianField, QuarticTruncationTerm) {
  // Nodes sit at cell centers, so x = 0.495 stands in for x = 0.5.
  const EmbeddedGrid g = build_grid(kSquare, 0.01);
  const std::vector<NodeHessian> hs = hessian_field(raw_field(g, [](Vec2 x) { return std::pow(x.x, 4); }), g);
  ASSERT_FALSE(hs.empty());
  bool found = false;
  for (const NodeHessian& hn : hs) {
    const Vec2 x = g.position(hn.node);
    // (x+h)^4 - 2x^4 + (x-h)^4 = h^2 (12 x^2 + 2 h^2)
    EXPECT_NEAR(hn.xx, 12.0 * x.x * x.x + 2.0 * 1e-4, 1e-8);
    if (std::abs(x.x - 0.495) < 1e-9) {
      EXPECT_NEAR(hn.xx, 2.9405, 1e-8);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(LogPdeResidual, ConstantMismatch) {
  const EmbeddedGrid g = build_grid(kSquare, 0.05);
  EXPECT_DOUBLE_EQ(pde2_residual(1.0, raw_field(g, [](Vec2) { return 0.0; }), g, kSquare, 0.3), 1.0);
}

TEST(LogPdeResidual, Errors) {
  const EmbeddedGrid g = build_grid(kSquare, 0.05);
  const LogField zero = raw_field(g, [](Vec2) { return 0.0; });
  EXPECT_EQ(code_of([&] { pde2_residual(1.0, zero, g, kSquare, 0.1); }), ErrorCode::kMarginTooSmall);
  EXPECT_EQ(code_of([&] { pde2_residual(1.0, zero, g, kSquare, 1.5); }), ErrorCode::kNoEligibleSamples);
}

TEST(ConcavityReport, GaussianSyntheticField) {
  const EmbeddedGrid g = build_grid(kSquare, 0.05);
  const std::vector<double> u = sample(g, [](Vec2 x) { return std::exp(-dot(x, x)); });
  const ConcavityReport r = concavity_report(1.0, u, g, kSquare, 0.3);
  EXPECT_NEAR(r.min_lambda_min, 2.0, 1e-8);
  EXPECT_NEAR(r.max_lambda_max, 2.0, 1e-8);
  EXPECT_EQ(r.rank_histogram[2], r.sample_count);
}

TEST(ConcavityReport, SolvedSquare) {
  const BodySolution s = solve_body(kSquare, config(0.02));
  const ConcavityReport r = concavity_report(s.eigen.lambda, s.u_field(), s.grid, kSquare, 0.3);
  EXPECT_GT(r.sample_count, 1000u);
  EXPECT_GT(r.min_lambda_min, 0.0);
  EXPECT_EQ(r.rank_histogram[2], r.sample_count);
  EXPECT_LT(r.residual_sup, 0.05);
  for (const ConcavitySample& smp : r.samples) {
    EXPECT_NEAR(smp.trace, smp.lambda_min + smp.lambda_max, 1e-9 * (1 + std::abs(smp.trace)));
    EXPECT_LE(signed_distance(kSquare, smp.position), -0.3);
  }
  EXPECT_TRUE(r.trace_bound_holds);
}

TEST(ConcavityReport, DiskResidualShrinksUnderRefinement) {
  const ConvexPolygon disk = disk_polygon(64, 2.0);
  double res[2];
  const double hs[2] = {0.04, 0.02};
  for (int i = 0; i < 2; ++i) {
    const BodySolution s = solve_body(disk, config(hs[i]));
    res[i] = pde2_residual(s.eigen.lambda, log_transform(s.u_field()), s.grid, disk, 0.3);
  }
  EXPECT_GE(std::log2(res[0] / res[1]), 1.5) << res[0] << " " << res[1];
}
