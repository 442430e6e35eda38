#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ouspec/geometry.hpp"

namespace ouspec {

enum class NodeClass : std::uint8_t { kInterior, kCut, kExterior };

/// Axis directions in stencil order.
enum Axis : int { kEast = 0, kWest = 1, kNorth = 2, kSouth = 3 };

inline constexpr std::array<std::array<int, 2>, 4> kAxisStep{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

/// Cartesian lattice classified against a body. Nodes sit at cell centers of
/// the lattice h*Z^2 that contains the body's Chebyshev center rounded to it.
/// Active nodes (INTERIOR or CUT) carry a dense index used by the operators.
class EmbeddedGrid {
 public:
  EmbeddedGrid(Vec2 origin, double h, int nx, int ny);

  Vec2 origin() const { return origin_; }
  double spacing() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t node_count() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i); }
  int column(std::size_t n) const { return static_cast<int>(n % static_cast<std::size_t>(nx_)); }
  int row(std::size_t n) const { return static_cast<int>(n / static_cast<std::size_t>(nx_)); }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }
  Vec2 position(int i, int j) const { return {origin_.x + i * h_, origin_.y + j * h_}; }
  Vec2 position(std::size_t n) const { return position(column(n), row(n)); }

  NodeClass node_class(std::size_t n) const { return cls_[n]; }
  double node_distance(std::size_t n) const { return dist_[n]; }
  /// Fractional leg length to the boundary (1 when the neighbor is active).
  double leg(std::size_t n, Axis a) const { return legs_[n][a]; }

  std::size_t active_count() const { return active_nodes_.size(); }
  std::span<const std::size_t> active_nodes() const { return active_nodes_; }
  /// Active index of a node, or -1.
  std::int64_t active_index(std::size_t n) const { return active_index_[n]; }

  /// Node field from an active-node vector (zero elsewhere) and back.
  std::vector<double> scatter(std::span<const double> active) const;
  std::vector<double> gather(std::span<const double> field) const;

  /// True when every node within Chebyshev distance `radius` is INTERIOR.
  bool interior_neighborhood(std::size_t n, int radius) const;

 private:
  friend EmbeddedGrid build_grid(const ConvexPolygon& body, double h);

  Vec2 origin_;
  double h_;
  int nx_;
  int ny_;
  std::vector<NodeClass> cls_;
  std::vector<double> dist_;
  std::vector<std::array<double, 4>> legs_;
  std::vector<std::size_t> active_nodes_;
  std::vector<std::int64_t> active_index_;
};

/// Classifies the lattice against the body; CUT legs are found by bisection
/// on the signed distance along each link. Throws kGridTooCoarse unless
/// h < inradius / 4.
EmbeddedGrid build_grid(const ConvexPolygon& body, double h);

}  // namespace ouspec
