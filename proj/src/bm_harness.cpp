#include "ouspec/bm_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ouspec/error.hpp"
#include "ouspec/report.hpp"

namespace ouspec {

namespace {

constexpr int kDirections = 360;

double support_mismatch(const ConvexPolygon& kt, const ConvexPolygon& k0, const ConvexPolygon& k1, double t) {
  double worst = 0.0;
  for (int k = 0; k < kDirections; ++k) {
    const Direction d(2.0 * std::numbers::pi * k / kDirections);
    worst = std::max(worst, std::abs(support(kt, d) - ((1.0 - t) * support(k0, d) + t * support(k1, d))));
  }
  return worst;
}

double cyclic_vertex_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, norm(a.vertices()[i] - b.vertices()[(i + shift) % n]));
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

double BMSweepResult::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (const BMEntry& e : entries) g = std::min(g, e.gap);
  return g;
}

void BMSweepResult::write_csv(const std::string& path) const {
  const std::string header[] = {"t", "lambda_t", "bound_t", "gap_t", "residual"};
  CsvWriter csv(path, header);
  for (const BMEntry& e : entries) {
    const double row[] = {e.t, e.lambda, e.bound, e.gap, e.residual};
    csv.row(row);
  }
}

double bm_tolerance(double lambda0, double h) { return std::max(1e-3, 5.0 * std::abs(lambda0) * h * h); }

BMSweepResult sweep(const ConvexPolygon& k0, const ConvexPolygon& k1, std::span<const double> tvals,
                    const SolverConfig& cfg) {
  for (std::size_t i = 0; i < tvals.size(); ++i) {
    if (!(tvals[i] > 0.0 && tvals[i] < 1.0) || (i > 0 && !(tvals[i] > tvals[i - 1]))) {
      throw Error(ErrorCode::kInvalidT, "sweep t values must be strictly increasing inside (0,1)");
    }
  }

  BMSweepResult out;
  out.h = cfg.h;
  out.solver_tol = cfg.solver.tol;
  out.body0.assign(k0.vertices().begin(), k0.vertices().end());
  out.body1.assign(k1.vertices().begin(), k1.vertices().end());

  // Slot 0 and the last slot hold the endpoints.
  std::vector<double> ts;
  ts.reserve(tvals.size() + 2);
  ts.push_back(0.0);
  ts.insert(ts.end(), tvals.begin(), tvals.end());
  ts.push_back(1.0);

  std::vector<ConvexPolygon> bodies;
  bodies.reserve(ts.size());
  for (const double t : ts) {
    bodies.push_back(minkowski_combine(k0, k1, t));
    out.support_error = std::max(out.support_error, support_mismatch(bodies.back(), k0, k1, t));
  }

  std::vector<BMEntry> entries(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    try {
      const BodySolution s = solve_body(bodies[i], cfg);
      entries[i] = {ts[i], s.eigen.lambda, 0.0, 0.0, s.eigen.residual_norm, s.eigen.iterations};
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "at t = " << ts[i] << ": " << e.what();
      throw Error(e.code(), msg.str());
    }
  });

  const double l0 = entries.front().lambda;
  const double l1 = entries.back().lambda;
  for (BMEntry& e : entries) {
    e.bound = (1.0 - e.t) * l0 + e.t * l1;
    e.gap = e.bound - e.lambda;
  }
  // The endpoint bounds reproduce lambda_0, lambda_1 exactly; pin the gaps.
  entries.front().gap = 0.0;
  entries.back().gap = 0.0;
  out.entries = std::move(entries);
  return out;
}

BMSweepResult equality_probe(const ConvexPolygon& body, Vec2 shift, std::span<const double> tvals,
                             const SolverConfig& cfg) {
  return sweep(body, translate(body, shift), tvals, cfg);
}

double translate_family_error(const ConvexPolygon& body, Vec2 shift, std::span<const double> tvals) {
  const ConvexPolygon moved = translate(body, shift);
  double worst = 0.0;
  for (const double t : tvals) {
    worst = std::max(worst, cyclic_vertex_distance(minkowski_combine(body, moved, t), translate(body, t * shift)));
  }
  return worst;
}

MonotonicityResult monotonicity_check(const ConvexPolygon& inner, const ConvexPolygon& outer,
                                      const SolverConfig& cfg) {
  if (!nested_by_support(inner, outer, kDirections, 1e-12 * outer.diameter())) {
    throw Error(ErrorCode::kNotNested, "inner body's support function exceeds the outer body's");
  }
  MonotonicityResult r;
  r.lambda_inner = solve_body(inner, cfg).eigen.lambda;
  r.lambda_outer = solve_body(outer, cfg).eigen.lambda;
  r.tolerance = bm_tolerance(r.lambda_inner, cfg.h);
  r.holds = r.lambda_inner >= r.lambda_outer - r.tolerance;
  return r;
}

}  // namespace ouspec
