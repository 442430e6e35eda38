#include "ouspec/measure.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ouspec/error.hpp"

namespace ouspec {

double gaussian_density(double x, int n) {
  if (n == 1) return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (n == 2) return std::exp(-0.5 * x * x) / (2.0 * std::numbers::pi);
  throw Error(ErrorCode::kDimensionMismatch, "gaussian_density supports n = 1 or 2");
}

double gaussian_density(Vec2 x) { return std::exp(-0.5 * dot(x, x)) / (2.0 * std::numbers::pi); }

double QuadratureWeights::total() const { return std::accumulate(weight.begin(), weight.end(), 0.0); }

QuadratureWeights node_weights(const EmbeddedGrid& grid, const ConvexPolygon& body) {
  const double h = grid.spacing();
  QuadratureWeights q{std::vector<double>(grid.node_count(), 0.0)};
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    const Vec2 p = grid.position(n);
    const double dist = signed_distance(body, p);
    if (dist >= 0.0) continue;
    double fraction = 1.0;
    // A cell can only meet the boundary if its center is within half a diagonal.
    if (dist > -h * std::numbers::sqrt2 / 2.0) {
      int inside = 0;
      for (int sj = 0; sj < 4; ++sj) {
        for (int si = 0; si < 4; ++si) {
          const Vec2 s{p.x + (si - 1.5) * h / 4.0, p.y + (sj - 1.5) * h / 4.0};
          if (signed_distance(body, s) < 0.0) ++inside;
        }
      }
      // Active nodes keep a positive weight even when every subsample misses.
      fraction = inside > 0 ? inside / 16.0 : 1.0 / 32.0;
    }
    q.weight[n] = fraction * h * h * gaussian_density(p);
  }
  return q;
}

double weighted_inner(std::span<const double> u, std::span<const double> v, const QuadratureWeights& w) {
  if (u.size() != v.size() || u.size() != w.weight.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "grid functions and weights differ in length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i] * w.weight[i];
  return s;
}

}  // namespace ouspec
