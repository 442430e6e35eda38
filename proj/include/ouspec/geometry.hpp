#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ouspec {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// Support-function argument, an angle in [0, 2pi).
class Direction {
 public:
  explicit Direction(double angle);
  double angle() const { return angle_; }
  Vec2 unit() const;

 private:
  double angle_;
};

/// A strictly convex polygon stored counterclockwise. Construct through
/// ConvexPolygon::validate; every instance satisfies the convexity invariants.
class ConvexPolygon {
 public:
  /// Reorients clockwise input. Throws Error with kTooFewVertices,
  /// kDuplicateVertex or kNotStrictlyConvex.
  static ConvexPolygon validate(std::vector<Vec2> raw_vertices);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double diameter() const { return diameter_; }

  /// Bounding box as (lower-left, upper-right).
  std::pair<Vec2, Vec2> bounds() const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> v, double diameter)
      : vertices_(std::move(v)), diameter_(diameter) {}

  std::vector<Vec2> vertices_;
  double diameter_;
};

double support(const ConvexPolygon& body, Direction d);

/// The body (1-t) K0 + t K1, built by merging edge sequences by normal angle.
ConvexPolygon minkowski_combine(const ConvexPolygon& k0, const ConvexPolygon& k1, double t);

bool contains(const ConvexPolygon& body, Vec2 p, double tol);

/// Negative inside (distance to the boundary), positive outside.
double signed_distance(const ConvexPolygon& body, Vec2 p);

struct InscribedDisk {
  Vec2 center;
  double radius = 0.0;
};

/// Largest inscribed disk. Ties (e.g. elongated rectangles) resolve to the
/// mean of all optimal vertex solutions, which stays optimal by convexity.
InscribedDisk chebyshev_center(const ConvexPolygon& body);

ConvexPolygon translate(const ConvexPolygon& body, Vec2 v);

/// Convex hull of 3m points drawn uniformly from the disk of the given radius.
/// Uses mt19937_64 with 53-bit mantissa extraction so the output does not
/// depend on the standard library's distribution implementations.
ConvexPolygon random_convex_polygon(std::uint64_t seed, int m, double radius, Vec2 center);

/// Regular m-gon with vertices on the circle of the given radius.
ConvexPolygon regular_polygon(int m, double radius, Vec2 center = {}, double phase = 0.0);

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
ConvexPolygon rectangle(double x0, double x1, double y0, double y1);

/// Monotone-chain hull, collinear points dropped. May return fewer than 3 points.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// True when the vertex lists agree up to a cyclic shift, within tol.
bool same_vertices_cyclic(const ConvexPolygon& a, const ConvexPolygon& b, double tol);

/// Checks h_inner <= h_outer + tol on `directions` equally spaced angles.
bool nested_by_support(const ConvexPolygon& inner, const ConvexPolygon& outer,
                       int directions = 360, double tol = 1e-12);

}  // namespace ouspec
