#include "ouspec/concavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ouspec/error.hpp"
#include "ouspec/report.hpp"

namespace ouspec {

namespace {

struct LocalDerivatives {
  double wx, wy, wxx, wxy, wyy;
};

LocalDerivatives derivatives_at(const std::vector<double>& w, const EmbeddedGrid& grid, std::size_t n) {
  const int i = grid.column(n);
  const int j = grid.row(n);
  const double h = grid.spacing();
  auto at = [&](int di, int dj) { return w[grid.node(i + di, j + dj)]; };
  const double c = at(0, 0);
  return {
      (at(1, 0) - at(-1, 0)) / (2.0 * h),
      (at(0, 1) - at(0, -1)) / (2.0 * h),
      (at(1, 0) - 2.0 * c + at(-1, 0)) / (h * h),
      (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h),
      (at(0, 1) - 2.0 * c + at(0, -1)) / (h * h),
  };
}

bool stencil_usable(const LogField& w, const EmbeddedGrid& grid, std::size_t n) {
  if (!grid.interior_neighborhood(n, 2)) return false;
  const int i = grid.column(n);
  const int j = grid.row(n);
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if (w.excluded[grid.node(i + di, j + dj)]) return false;
    }
  }
  return true;
}

void check_field(const LogField& w, const EmbeddedGrid& grid) {
  if (w.w.size() != grid.node_count() || w.excluded.size() != grid.node_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "log field does not match the grid");
  }
}

}  // namespace

LogField log_transform(std::span<const double> u, double floor) {
  LogField out{std::vector<double>(u.size()), std::vector<bool>(u.size(), false)};
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.excluded[i] = !(u[i] >= floor);
    out.w[i] = -std::log(std::max(u[i], floor));
  }
  return out;
}

LogField log_transform(std::span<const double> u) {
  double peak = 0.0;
  for (const double v : u) peak = std::max(peak, v);
  return log_transform(u, peak > 0.0 ? 1e-12 * peak : std::numeric_limits<double>::min());
}

std::array<double, 2> NodeHessian::eigenvalues() const {
  const double mean = 0.5 * (xx + yy);
  const double rad = std::hypot(0.5 * (xx - yy), xy);
  return {mean - rad, mean + rad};
}

std::vector<NodeHessian> hessian_field(const LogField& w, const EmbeddedGrid& grid) {
  check_field(w, grid);
  std::vector<NodeHessian> out;
  for (const std::size_t n : grid.active_nodes()) {
    if (!stencil_usable(w, grid, n)) continue;
    const LocalDerivatives d = derivatives_at(w.w, grid, n);
    out.push_back({n, d.wxx, d.wxy, d.wyy});
  }
  return out;
}

std::vector<std::size_t> sample_nodes(const LogField& w, const EmbeddedGrid& grid, const ConvexPolygon& body,
                                      double margin) {
  check_field(w, grid);
  if (!(margin >= 3.0 * grid.spacing())) {
    std::ostringstream msg;
    msg << "margin " << margin << " is below 3h = " << 3.0 * grid.spacing();
    throw Error(ErrorCode::kMarginTooSmall, msg.str());
  }
  std::vector<std::size_t> out;
  for (const std::size_t n : grid.active_nodes()) {
    if (signed_distance(body, grid.position(n)) <= -margin && stencil_usable(w, grid, n)) out.push_back(n);
  }
  return out;
}

double pde2_residual(double lambda, const LogField& w, const EmbeddedGrid& grid, const ConvexPolygon& body,
                     double margin) {
  const std::vector<std::size_t> samples = sample_nodes(w, grid, body, margin);
  if (samples.empty()) throw Error(ErrorCode::kNoEligibleSamples, "no grid node lies at the requested margin");
  double sup = 0.0;
  for (const std::size_t n : samples) {
    const LocalDerivatives d = derivatives_at(w.w, grid, n);
    const Vec2 x = grid.position(n);
    const double r = d.wxx + d.wyy - lambda - (d.wx * d.wx + d.wy * d.wy) - (x.x * d.wx + x.y * d.wy);
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

ConcavityReport concavity_report(double lambda, std::span<const double> u, const EmbeddedGrid& grid,
                                 const ConvexPolygon& body, double margin, double rank_tol) {
  if (u.size() != grid.node_count()) throw Error(ErrorCode::kDimensionMismatch, "u must be a node field");
  const LogField w = log_transform(u);
  const std::vector<std::size_t> nodes = sample_nodes(w, grid, body, margin);
  if (nodes.empty()) throw Error(ErrorCode::kNoEligibleSamples, "no grid node lies at the requested margin");

  ConcavityReport rep;
  rep.margin = margin;
  rep.rank_tol = rank_tol;
  rep.sample_count = nodes.size();
  rep.min_lambda_min = std::numeric_limits<double>::infinity();
  rep.max_lambda_max = -std::numeric_limits<double>::infinity();
  rep.trace_min = std::numeric_limits<double>::infinity();
  rep.samples.reserve(nodes.size());

  for (const std::size_t n : nodes) {
    const LocalDerivatives d = derivatives_at(w.w, grid, n);
    const NodeHessian hess{n, d.wxx, d.wxy, d.wyy};
    const auto eig = hess.eigenvalues();
    const Vec2 x = grid.position(n);
    ConcavitySample s;
    s.position = x;
    s.lambda_min = eig[0];
    s.lambda_max = eig[1];
    s.trace = hess.trace();
    s.radial_drift = x.x * d.wx + x.y * d.wy;
    s.residual = s.trace - lambda - (d.wx * d.wx + d.wy * d.wy) - s.radial_drift;
    const double threshold = rank_tol * (1.0 + std::abs(s.trace));
    s.rank = (eig[0] > threshold) + (eig[1] > threshold);

    rep.min_lambda_min = std::min(rep.min_lambda_min, s.lambda_min);
    rep.max_lambda_max = std::max(rep.max_lambda_max, s.lambda_max);
    rep.trace_min = std::min(rep.trace_min, s.trace);
    rep.residual_sup = std::max(rep.residual_sup, std::abs(s.residual));
    ++rep.rank_histogram[static_cast<std::size_t>(s.rank)];
    rep.samples.push_back(s);
  }
  for (const ConcavitySample& s : rep.samples) {
    if (s.radial_drift >= 0.0 && s.trace < lambda - rep.residual_sup) rep.trace_bound_holds = false;
  }
  return rep;
}

void ConcavityReport::write_summary(const std::string& path) const {
  Summary s;
  s.set("margin", margin);
  s.set("rank_tol", rank_tol);
  s.set("sample_count", static_cast<long long>(sample_count));
  s.set("min_hessian_eig", min_lambda_min);
  s.set("max_hessian_eig", max_lambda_max);
  for (std::size_t r = 0; r < rank_histogram.size(); ++r) {
    s.set("rank_" + std::to_string(r), static_cast<long long>(rank_histogram[r]));
  }
  s.set("residual_sup", residual_sup);
  s.set("trace_min", trace_min);
  s.set("trace_bound_holds", std::string(trace_bound_holds ? "true" : "false"));
  s.write(path);
}

void ConcavityReport::write_samples_csv(const std::string& path) const {
  const std::string header[] = {"x", "y", "lambda_min", "lambda_max", "residual"};
  CsvWriter csv(path, header);
  for (const ConcavitySample& s : samples) {
    const double row[] = {s.position.x, s.position.y, s.lambda_min, s.lambda_max, s.residual};
    csv.row(row);
  }
}

}  // namespace ouspec
