#include "ouspec/grid.hpp"

#include <cmath>
#include <sstream>

#include "ouspec/error.hpp"

namespace ouspec {

EmbeddedGrid::EmbeddedGrid(Vec2 origin, double h, int nx, int ny)
    : origin_(origin),
      h_(h),
      nx_(nx),
      ny_(ny),
      cls_(node_count(), NodeClass::kExterior),
      dist_(node_count(), 0.0),
      legs_(node_count(), {1.0, 1.0, 1.0, 1.0}),
      active_index_(node_count(), -1) {}

std::vector<double> EmbeddedGrid::scatter(std::span<const double> active) const {
  if (active.size() != active_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "active vector has wrong length");
  }
  std::vector<double> field(node_count(), 0.0);
  for (std::size_t a = 0; a < active.size(); ++a) field[active_nodes_[a]] = active[a];
  return field;
}

std::vector<double> EmbeddedGrid::gather(std::span<const double> field) const {
  if (field.size() != node_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "node field has wrong length");
  }
  std::vector<double> active(active_count());
  for (std::size_t a = 0; a < active.size(); ++a) active[a] = field[active_nodes_[a]];
  return active;
}

bool EmbeddedGrid::interior_neighborhood(std::size_t n, int radius) const {
  const int i = column(n);
  const int j = row(n);
  for (int dj = -radius; dj <= radius; ++dj) {
    for (int di = -radius; di <= radius; ++di) {
      if (!in_range(i + di, j + dj) || cls_[node(i + di, j + dj)] != NodeClass::kInterior) return false;
    }
  }
  return true;
}

EmbeddedGrid build_grid(const ConvexPolygon& body, double h) {
  const InscribedDisk disk = chebyshev_center(body);
  if (!(h > 0.0) || !(h < disk.radius / 4.0)) {
    std::ostringstream msg;
    msg << "h = " << h << " must be positive and below inradius/4 = " << disk.radius / 4.0;
    throw Error(ErrorCode::kGridTooCoarse, msg.str());
  }

  const Vec2 corner{std::round(disk.center.x / h) * h, std::round(disk.center.y / h) * h};
  const auto [lo, hi] = body.bounds();
  // Nodes at corner + (k + 1/2) h, one extra cell beyond the bounding box.
  const int kx0 = static_cast<int>(std::floor((lo.x - corner.x) / h - 0.5)) - 1;
  const int kx1 = static_cast<int>(std::ceil((hi.x - corner.x) / h - 0.5)) + 1;
  const int ky0 = static_cast<int>(std::floor((lo.y - corner.y) / h - 0.5)) - 1;
  const int ky1 = static_cast<int>(std::ceil((hi.y - corner.y) / h - 0.5)) + 1;

  EmbeddedGrid grid({corner.x + (kx0 + 0.5) * h, corner.y + (ky0 + 0.5) * h}, h, kx1 - kx0 + 1, ky1 - ky0 + 1);

  for (std::size_t n = 0; n < grid.node_count(); ++n) grid.dist_[n] = signed_distance(body, grid.position(n));

  for (int j = 0; j < grid.ny_; ++j) {
    for (int i = 0; i < grid.nx_; ++i) {
      const std::size_t n = grid.node(i, j);
      if (grid.dist_[n] >= 0.0) continue;
      bool cut = false;
      for (int a = 0; a < 4; ++a) {
        const int ni = i + kAxisStep[a][0];
        const int nj = j + kAxisStep[a][1];
        // The margin cell guarantees the neighbor exists.
        if (grid.dist_[grid.node(ni, nj)] < 0.0) continue;
        cut = true;
        const Vec2 p = grid.position(i, j);
        const Vec2 step{kAxisStep[a][0] * h, kAxisStep[a][1] * h};
        double inside = 0.0;
        double outside = 1.0;
        while (outside - inside > 1e-12) {
          const double mid = 0.5 * (inside + outside);
          if (signed_distance(body, p + mid * step) < 0.0) {
            inside = mid;
          } else {
            outside = mid;
          }
        }
        grid.legs_[n][a] = 0.5 * (inside + outside);
      }
      grid.cls_[n] = cut ? NodeClass::kCut : NodeClass::kInterior;
      grid.active_index_[n] = static_cast<std::int64_t>(grid.active_nodes_.size());
      grid.active_nodes_.push_back(n);
    }
  }
  return grid;
}

}  // namespace ouspec
