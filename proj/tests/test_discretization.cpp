#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "ouspec/discretization.hpp"
#include "ouspec/error.hpp"
#include "ouspec/grid.hpp"
#include "ouspec/pipeline.hpp"

using namespace ouspec;

namespace {

ConvexPolygon square(double a) { return rectangle(-a, a, -a, a); }

std::size_t nearest_node(const EmbeddedGrid& g, Vec2 p) {
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const double d = norm(g.position(n) - p);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return v;
}

double dot_span(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// max |(M^-1 A u)_i - x_i| for u = x over active nodes at least 3h inside.
double manufactured_error(const ConvexPolygon& k, double h) {
  const EmbeddedGrid g = build_grid(k, h);
  const SparseOperatorPair p = assemble(g, k);
  std::vector<double> u(g.active_count());
  for (std::size_t a = 0; a < u.size(); ++a) u[a] = g.position(g.active_nodes()[a]).x;
  const std::vector<double> au = ouspec::apply(p, u);
  double err = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (g.node_distance(g.active_nodes()[a]) > -3.0 * h) continue;
    err = std::max(err, std::abs(au[a] / p.mass[a] - u[a]));
  }
  return err;
}

}  // namespace

TEST(BuildGrid, SquareClassification) {
  const ConvexPolygon k = square(1);
  const EmbeddedGrid g = build_grid(k, 0.1);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec2 p = g.position(n);
    if (std::abs(p.x) <= 0.9 && std::abs(p.y) <= 0.9) {
      EXPECT_EQ(g.node_class(n), NodeClass::kInterior) << p.x << " " << p.y;
    }
    if (signed_distance(k, p) > 0) EXPECT_EQ(g.node_class(n), NodeClass::kExterior);
  }
  const std::size_t c = nearest_node(g, {0.95, 0.05});
  ASSERT_NEAR(g.position(c).x, 0.95, 1e-12);
  ASSERT_NEAR(g.position(c).y, 0.05, 1e-12);
  EXPECT_EQ(g.node_class(c), NodeClass::kCut);
  EXPECT_NEAR(g.leg(c, kEast), 0.5, 1e-10);
  EXPECT_EQ(g.leg(c, kWest), 1.0);
}

TEST(BuildGrid, RejectsCoarseSpacing) {
  try {
    build_grid(square(1), 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridTooCoarse);
  }
  EXPECT_THROW(build_grid(square(1), 0.0), Error);
}

TEST(BuildGrid, ActiveIndexRoundTrip) {
  const ConvexPolygon k = random_convex_polygon(4, 6, 1.5, {});
  const EmbeddedGrid g = build_grid(k, 0.05);
  for (std::size_t a = 0; a < g.active_count(); ++a) {
    EXPECT_EQ(g.active_index(g.active_nodes()[a]), static_cast<std::int64_t>(a));
  }
  const std::vector<double> v = random_vector(g.active_count(), 1);
  EXPECT_EQ(g.gather(g.scatter(v)), v);
}

TEST(Assemble, InteriorRowsAnnihilateConstants) {
  const ConvexPolygon k = random_convex_polygon(7, 7, 1.8, {0.3, 0.1});
  const EmbeddedGrid g = build_grid(k, 0.04);
  const SparseOperatorPair p = assemble(g, k);
  const std::vector<double> ones(p.size(), 1.0);
  const std::vector<double> r = ouspec::apply(p, ones);
  std::size_t checked = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    const std::size_t n = g.active_nodes()[a];
    const int i = g.column(n), j = g.row(n);
    bool all_interior = g.node_class(n) == NodeClass::kInterior;
    for (const auto& s : kAxisStep) {
      all_interior = all_interior && g.node_class(g.node(i + s[0], j + s[1])) == NodeClass::kInterior;
    }
    if (!all_interior) continue;
    EXPECT_NEAR(r[a], 0.0, 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(Assemble, ExactlySymmetricAfterSymmetrization) {
  for (const CutRowScaling s : {CutRowScaling::kCellVolume, CutRowScaling::kLegAveraged}) {
    const ConvexPolygon k = random_convex_polygon(9, 6, 1.5, {});
    const EmbeddedGrid g = build_grid(k, 0.05);
    const SparseOperatorPair p = assemble(g, k, s);
    EXPECT_EQ(p.stiffness.asymmetry(), 0.0);
    const std::vector<double> u = random_vector(p.size(), 2), v = random_vector(p.size(), 3);
    // u^T A v and v^T A u agree to rounding of the two summation orders.
    EXPECT_NEAR(dot_span(u, ouspec::apply(p, v)), dot_span(v, ouspec::apply(p, u)), 1e-12);
  }
}

TEST(Assemble, LegAveragedRowsAreAsymmetricBeforeSymmetrization) {
  const ConvexPolygon k = random_convex_polygon(9, 6, 1.5, {});
  const EmbeddedGrid g = build_grid(k, 0.05);
  EXPECT_GT(assemble(g, k, CutRowScaling::kLegAveraged).raw_asymmetry, 0.0);
  EXPECT_LT(assemble(g, k, CutRowScaling::kCellVolume).raw_asymmetry, 1e-15);
}

TEST(Assemble, ManufacturedLinearFieldConverges) {
  const ConvexPolygon k = random_convex_polygon(12, 8, 1.8, {});
  const double e1 = manufactured_error(k, 0.04);
  const double e2 = manufactured_error(k, 0.02);
  EXPECT_GE(std::log2(e1 / e2), 1.8) << e1 << " " << e2;
  EXPECT_LT(e2, 1e-3);
}

TEST(Assemble, PositiveSemidefiniteOnRandomVectors) {
  const ConvexPolygon k = random_convex_polygon(13, 5, 1.4, {0.2, 0.0});
  const EmbeddedGrid g = build_grid(k, 0.05);
  const SparseOperatorPair p = assemble(g, k);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::vector<double> u = random_vector(p.size(), s);
    EXPECT_GE(dot_span(u, ouspec::apply(p, u)), 0.0);
  }
}

TEST(Assemble, CoerciveAgainstDenseReference) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ConvexPolygon k = random_convex_polygon(seed, 6, 1.5, {});
    const EmbeddedGrid g = build_grid(k, 0.12);
    const SparseOperatorPair p = assemble(g, k);
    EXPECT_GT(ouspec::testing::dense_smallest(p).lambda, 0.0);
  }
}

TEST(Assemble, NestedBodiesAtFixedSpacing) {
  const double h = 0.1;
  const ConvexPolygon inner = square(1), outer = square(2);
  const SparseOperatorPair pi = assemble(build_grid(inner, h), inner);
  const SparseOperatorPair po = assemble(build_grid(outer, h), outer);
  EXPECT_GT(ouspec::testing::dense_smallest(pi).lambda, ouspec::testing::dense_smallest(po).lambda);
}

TEST(Apply, Examples) {
  const ConvexPolygon k = square(1);
  const EmbeddedGrid g = build_grid(k, 0.1);
  const SparseOperatorPair p = assemble(g, k);
  const std::vector<double> zero(p.size(), 0.0);
  for (const double y : ouspec::apply(p, zero)) EXPECT_EQ(y, 0.0);
  const std::size_t col = 37;
  std::vector<double> e(p.size(), 0.0);
  e[col] = 1.0;
  const std::vector<double> y = ouspec::apply(p, e);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(y[i], p.stiffness.at(i, col));
  const std::vector<double> bad(3, 0.0);
  EXPECT_THROW(ouspec::apply(p, bad), Error);
}

TEST(Csr, TripletsSumDuplicatesAndDump) {
  const CsrMatrix a = CsrMatrix::from_triplets(3, {{0, 0, 1.0}, {2, 1, -1.0}, {0, 0, 2.0}, {1, 2, -1.0}, {1, 1, 4.0}});
  EXPECT_EQ(a.nnz(), 4u);
  EXPECT_EQ(a.at(0, 0), 3.0);
  EXPECT_EQ(a.at(0, 1), 0.0);
  EXPECT_EQ(a.diagonal(), (std::vector<double>{3.0, 4.0, 0.0}));
  EXPECT_EQ(a.asymmetry(), 0.0);
  CsrMatrix b = CsrMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 3.0}, {0, 0, 1.0}});
  EXPECT_EQ(b.asymmetry(), 2.0);
  b.symmetrize();
  EXPECT_EQ(b.at(0, 1), 2.0);
  EXPECT_EQ(b.at(1, 0), 2.0);

  const std::string path = ::testing::TempDir() + "csr_dump.txt";
  a.dump(path);
  std::ifstream in(path);
  std::size_t i = 0, j = 0;
  double v = 0.0;
  std::size_t lines = 0;
  while (in >> i >> j >> v) {
    EXPECT_EQ(v, a.at(i, j));
    ++lines;
  }
  EXPECT_EQ(lines, a.nnz());
  std::remove(path.c_str());
}
