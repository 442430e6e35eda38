#include "ouspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "ouspec/error.hpp"

namespace ouspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_pairwise_distance(std::span<const Vec2> v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, norm(v[i] - v[j]));
  }
  return d;
}

double signed_area2(std::span<const Vec2> v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return a;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  double s = len2 > 0.0 ? dot(p - a, e) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return norm(p - (a + s * e));
}

// Drops repeated and collinear vertices of a counterclockwise cycle.
std::vector<Vec2> prune_cycle(std::vector<Vec2> v, double len_tol, double cross_tol) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Vec2 prev = v[(i + v.size() - 1) % v.size()];
      const Vec2 next = v[(i + 1) % v.size()];
      if (norm(v[i] - prev) <= len_tol || cross(v[i] - prev, next - v[i]) <= cross_tol) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

// Index of the lowest (then leftmost) vertex; edge angles increase from there.
std::size_t bottom_vertex(std::span<const Vec2> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x)) best = i;
  }
  return best;
}

double edge_angle(Vec2 e) {
  double a = std::atan2(e.y, e.x);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Direction::Direction(double angle) {
  angle = std::fmod(angle, kTwoPi);
  if (angle < 0.0) angle += kTwoPi;
  angle_ = angle;
}

Vec2 Direction::unit() const { return {std::cos(angle_), std::sin(angle_)}; }

ConvexPolygon ConvexPolygon::validate(std::vector<Vec2> raw) {
  if (raw.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                "polygon needs at least 3 vertices, got " + std::to_string(raw.size()));
  }
  for (const Vec2& p : raw) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kNotStrictlyConvex, "non-finite vertex coordinate");
    }
  }
  const double diam = max_pairwise_distance(raw);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (norm(raw[i] - raw[j]) <= 1e-12 * diam || diam == 0.0) {
        std::ostringstream msg;
        msg << "vertices " << i << " and " << j << " coincide";
        throw Error(ErrorCode::kDuplicateVertex, msg.str());
      }
    }
  }
  if (signed_area2(raw) < 0.0) std::reverse(raw.begin(), raw.end());

  const double conv_tol = 1e-12 * diam * diam;
  const std::size_t n = raw.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = raw[(i + 1) % n] - raw[i];
    const Vec2 e1 = raw[(i + 2) % n] - raw[(i + 1) % n];
    const double c = cross(e0, e1);
    if (c <= conv_tol) {
      std::ostringstream msg;
      msg << "turn at vertex " << (i + 1) % n << " has cross product " << c;
      throw Error(ErrorCode::kNotStrictlyConvex, msg.str());
    }
    turning += std::atan2(c, dot(e0, e1));
  }
  // Star polygons have all-left turns but wind more than once.
  if (std::abs(turning - kTwoPi) > 1e-6) {
    throw Error(ErrorCode::kNotStrictlyConvex, "vertex cycle winds more than once");
  }
  return ConvexPolygon(std::move(raw), diam);
}

std::pair<Vec2, Vec2> ConvexPolygon::bounds() const {
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi{-lo.x, -lo.y};
  for (const Vec2& v : vertices_) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  return {lo, hi};
}

double support(const ConvexPolygon& body, Direction d) {
  const Vec2 u = d.unit();
  double h = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : body.vertices()) h = std::max(h, dot(v, u));
  return h;
}

ConvexPolygon minkowski_combine(const ConvexPolygon& k0, const ConvexPolygon& k1, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kInvalidT, "t must lie in [0,1], got " + std::to_string(t));
  }
  if (t == 0.0) return k0;
  if (t == 1.0) return k1;

  auto scaled = [](const ConvexPolygon& k, double s) {
    std::vector<Vec2> v;
    v.reserve(k.size());
    const std::size_t start = bottom_vertex(k.vertices());
    for (std::size_t i = 0; i < k.size(); ++i) v.push_back(s * k.vertices()[(start + i) % k.size()]);
    return v;
  };
  const std::vector<Vec2> a = scaled(k0, 1.0 - t);
  const std::vector<Vec2> b = scaled(k1, t);
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  std::vector<Vec2> out;
  out.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    out.push_back(a[i % n] + b[j % m]);
    const double ang_a = i < n ? edge_angle(a[(i + 1) % n] - a[i]) : std::numeric_limits<double>::infinity();
    const double ang_b = j < m ? edge_angle(b[(j + 1) % m] - b[j]) : std::numeric_limits<double>::infinity();
    if (ang_a < ang_b) {
      ++i;
    } else if (ang_b < ang_a) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }

  const double diam = (1.0 - t) * k0.diameter() + t * k1.diameter();
  out = prune_cycle(std::move(out), 1e-12 * diam, 1e-11 * diam * diam);
  return ConvexPolygon::validate(std::move(out));
}

bool contains(const ConvexPolygon& body, Vec2 p, double tol) {
  const auto v = body.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    if (cross(e, p - v[i]) / norm(e) < -tol) return false;
  }
  return true;
}

double signed_distance(const ConvexPolygon& body, Vec2 p) {
  const auto v = body.vertices();
  double inside = std::numeric_limits<double>::infinity();
  bool outside = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    const double d = cross(e, p - v[i]) / norm(e);
    if (d < 0.0) outside = true;
    inside = std::min(inside, d);
  }
  if (!outside) return -inside;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

InscribedDisk chebyshev_center(const ConvexPolygon& body) {
  // Edge half-planes n.x <= b with outward unit normals; maximize r subject
  // to n.c + r <= b by enumerating vertices of the (c, r) feasible polytope.
  const auto v = body.vertices();
  const std::size_t m = v.size();
  std::vector<Vec2> normal(m);
  std::vector<double> offset(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e = v[(i + 1) % m] - v[i];
    const double len = norm(e);
    normal[i] = {e.y / len, -e.x / len};
    offset[i] = dot(normal[i], v[i]);
  }
  const double feas_tol = 1e-12 * body.diameter();

  double best_r = -std::numeric_limits<double>::infinity();
  std::vector<Vec2> best_centers;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        // Rows (nx, ny, 1 | b); Cramer's rule.
        const double a[3][3] = {{normal[i].x, normal[i].y, 1.0},
                                {normal[j].x, normal[j].y, 1.0},
                                {normal[k].x, normal[k].y, 1.0}};
        const double rhs[3] = {offset[i], offset[j], offset[k]};
        auto det3 = [](const double mm[3][3]) {
          return mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1]) -
                 mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0]) +
                 mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0]);
        };
        const double det = det3(a);
        if (std::abs(det) < 1e-12) continue;
        double sol[3];
        for (int col = 0; col < 3; ++col) {
          double tmp[3][3];
          for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) tmp[r][c] = c == col ? rhs[r] : a[r][c];
          }
          sol[col] = det3(tmp) / det;
        }
        const Vec2 c{sol[0], sol[1]};
        const double r = sol[2];
        if (r <= 0.0) continue;
        bool feasible = true;
        for (std::size_t q = 0; q < m && feasible; ++q) {
          feasible = dot(normal[q], c) + r <= offset[q] + feas_tol;
        }
        if (!feasible) continue;
        if (r > best_r + feas_tol) {
          best_r = r;
          best_centers.assign(1, c);
        } else if (r >= best_r - feas_tol) {
          best_r = std::max(best_r, r);
          best_centers.push_back(c);
        }
      }
    }
  }

  // Deduplicate before averaging so symmetric ties are not reweighted.
  std::vector<Vec2> unique;
  for (const Vec2& c : best_centers) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](Vec2 u) { return norm(u - c) <= 1e-9 * body.diameter(); });
    if (!seen) unique.push_back(c);
  }
  Vec2 mean{};
  for (const Vec2& c : unique) mean = mean + c;
  mean = (1.0 / static_cast<double>(unique.size())) * mean;
  return {mean, best_r};
}

ConvexPolygon translate(const ConvexPolygon& body, Vec2 v) {
  std::vector<Vec2> out(body.vertices().begin(), body.vertices().end());
  for (Vec2& p : out) p = p + v;
  return ConvexPolygon::validate(std::move(out));
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  double scale = 0.0;
  for (const Vec2& p : pts) scale = std::max({scale, std::abs(p.x - pts.front().x), std::abs(p.y - pts.front().y)});
  const double tol = 1e-11 * scale * scale;

  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

ConvexPolygon random_convex_polygon(std::uint64_t seed, int m, double radius, Vec2 center) {
  if (m < 3) throw Error(ErrorCode::kTooFewVertices, "random polygon needs m >= 3");
  for (std::uint64_t s = seed;; ++s) {
    std::mt19937_64 gen(s);
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(3 * m));
    for (int i = 0; i < 3 * m; ++i) {
      const double r = radius * std::sqrt(uniform());
      const double th = kTwoPi * uniform();
      pts.push_back({center.x + r * std::cos(th), center.y + r * std::sin(th)});
    }
    std::vector<Vec2> hull = convex_hull(std::move(pts));
    if (hull.size() < 3) continue;
    try {
      return ConvexPolygon::validate(std::move(hull));
    } catch (const Error&) {
      continue;
    }
  }
}

ConvexPolygon regular_polygon(int m, double radius, Vec2 center, double phase) {
  if (m < 3) throw Error(ErrorCode::kTooFewVertices, "regular polygon needs m >= 3");
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double th = phase + kTwoPi * k / m;
    v.push_back({center.x + radius * std::cos(th), center.y + radius * std::sin(th)});
  }
  return ConvexPolygon::validate(std::move(v));
}

ConvexPolygon rectangle(double x0, double x1, double y0, double y1) {
  return ConvexPolygon::validate({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

bool same_vertices_cyclic(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = norm(a.vertices()[i] - b.vertices()[(i + shift) % n]) <= tol;
    }
    if (ok) return true;
  }
  return false;
}

bool nested_by_support(const ConvexPolygon& inner, const ConvexPolygon& outer, int directions, double tol) {
  for (int k = 0; k < directions; ++k) {
    const Direction d(kTwoPi * k / directions);
    if (support(inner, d) > support(outer, d) + tol) return false;
  }
  return true;
}

}  // namespace ouspec
