#include "ouspec/discretization.hpp"

#include <limits>

#include "ouspec/error.hpp"
#include "ouspec/measure.hpp"

namespace ouspec {

SparseOperatorPair assemble(const EmbeddedGrid& grid, const ConvexPolygon& body, CutRowScaling scaling) {
  const double h = grid.spacing();
  const QuadratureWeights weights = node_weights(grid, body);

  std::vector<CsrMatrix::Triplet> triplets;
  triplets.reserve(grid.active_count() * 5);
  SparseOperatorPair pair;
  pair.mass = grid.gather(weights.weight);

  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    const std::size_t n = grid.active_nodes()[a];
    const int i = grid.column(n);
    const int j = grid.row(n);
    const Vec2 p = grid.position(n);

    double axis_factor[2] = {1.0, 1.0};
    double row_factor = 1.0;
    if (scaling == CutRowScaling::kLegAveraged && grid.node_class(n) == NodeClass::kCut) {
      axis_factor[0] = 2.0 / (grid.leg(n, kEast) + grid.leg(n, kWest));
      axis_factor[1] = 2.0 / (grid.leg(n, kNorth) + grid.leg(n, kSouth));
      row_factor = pair.mass[a] / (h * h * gaussian_density(p));
    }

    double diag = 0.0;
    for (int dir = 0; dir < 4; ++dir) {
      const double alpha = grid.leg(n, static_cast<Axis>(dir));
      const Vec2 step{kAxisStep[dir][0] * h, kAxisStep[dir][1] * h};
      const double scale = row_factor * axis_factor[dir / 2];
      const std::size_t nb = grid.node(i + kAxisStep[dir][0], j + kAxisStep[dir][1]);
      const std::int64_t nb_active = grid.active_index(nb);
      if (nb_active >= 0) {
        const Vec2 mid{0.5 * (p.x + grid.position(nb).x), 0.5 * (p.y + grid.position(nb).y)};
        const double c = scale * gaussian_density(mid);
        triplets.push_back({a, static_cast<std::size_t>(nb_active), -c});
        diag += c;
      } else {
        // Shortened leg to the boundary, where u = 0.
        diag += scale * gaussian_density(p + (0.5 * alpha) * step) / alpha;
      }
    }
    triplets.push_back({a, a, diag});
  }

  pair.stiffness = CsrMatrix::from_triplets(grid.active_count(), std::move(triplets));
  pair.raw_asymmetry = pair.stiffness.asymmetry();
  pair.stiffness.symmetrize();

  const Vec2 center = chebyshev_center(body).center;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    const double d = norm(grid.position(grid.active_nodes()[a]) - center);
    if (d < best) {
      best = d;
      pair.sign_anchor = a;
    }
  }
  return pair;
}

std::vector<double> apply(const SparseOperatorPair& pair, std::span<const double> u) {
  if (u.size() != pair.size()) throw Error(ErrorCode::kDimensionMismatch, "vector length differs from operator size");
  return pair.stiffness.multiply(u);
}

}  // namespace ouspec
