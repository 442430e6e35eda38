#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>

#include "ouspec/bm_harness.hpp"
#include "ouspec/cli.hpp"
#include "ouspec/concavity.hpp"
#include "ouspec/error.hpp"
#include "ouspec/oracle_1d.hpp"
#include "ouspec/report.hpp"

namespace ouspec {

namespace {

namespace fs = std::filesystem;

std::string join(const fs::path& dir, const std::string& file) { return (dir / file).string(); }

std::vector<double> interior_tvals(const RunConfig& cfg) {
  std::vector<double> out;
  for (const double t : cfg.tvals) {
    if (t > 0.0 && t < 1.0) out.push_back(t);
  }
  if (cfg.tvals.empty()) {
    for (int k = 1; k <= 9; ++k) out.push_back(k / 10.0);
  }
  return out;
}

void record_solution(Summary& s, const BodySolution& sol) {
  double min_u = std::numeric_limits<double>::infinity();
  for (const double u : sol.eigen.u) min_u = std::min(min_u, u);
  s.set("lambda", sol.eigen.lambda);
  s.set("residual", sol.eigen.residual_norm);
  s.set("iterations", static_cast<long long>(sol.eigen.iterations));
  s.set("active_nodes", static_cast<long long>(sol.grid.active_count()));
  s.set("min_u", min_u);
  s.set("raw_asymmetry", sol.pair.raw_asymmetry);
}

void write_solution_files(const fs::path& out, const BodySolution& sol, const ConvexPolygon& body, bool dump) {
  const std::string header[] = {"x", "y", "u"};
  CsvWriter csv(join(out, "solution.csv"), header);
  for (std::size_t a = 0; a < sol.grid.active_count(); ++a) {
    const Vec2 p = sol.grid.position(sol.grid.active_nodes()[a]);
    const double row[] = {p.x, p.y, sol.eigen.u[a]};
    csv.row(row);
  }
  write_heatmap_svg(join(out, "heatmap.svg"), sol.grid, sol.u_field(), body);
  if (dump) sol.pair.stiffness.dump(join(out, "matrix.txt"));
}

int cmd_solve(const RunConfig& cfg, const fs::path& out) {
  const ConvexPolygon& body = cfg.primary_body();
  const BodySolution sol = solve_body(body, cfg.solver);
  Summary s;
  s.set("command", std::string("solve"));
  s.set("h", cfg.h);
  record_solution(s, sol);
  s.write(join(out, "summary.txt"));
  write_solution_files(out, sol, body, cfg.dump_matrix);
  return kExitOk;
}

int cmd_concavity(const RunConfig& cfg, const fs::path& out) {
  const ConvexPolygon& body = cfg.primary_body();
  const BodySolution sol = solve_body(body, cfg.solver);
  const ConcavityReport rep =
      concavity_report(sol.eigen.lambda, sol.u_field(), sol.grid, body, cfg.margin, cfg.rank_tol);
  Summary s;
  s.set("command", std::string("concavity"));
  s.set("h", cfg.h);
  record_solution(s, sol);
  s.set("margin", rep.margin);
  s.set("sample_count", static_cast<long long>(rep.sample_count));
  s.set("min_hessian_eig", rep.min_lambda_min);
  s.set("max_hessian_eig", rep.max_lambda_max);
  for (std::size_t r = 0; r < rep.rank_histogram.size(); ++r) {
    s.set("rank_" + std::to_string(r), static_cast<long long>(rep.rank_histogram[r]));
  }
  s.set("pde2_residual_sup", rep.residual_sup);
  s.set("trace_min", rep.trace_min);
  s.set("eps_conc", cfg.concavity_floor);
  const bool ok = rep.min_lambda_min >= -cfg.concavity_floor;
  s.set("log_concave", std::string(ok ? "true" : "false"));
  s.write(join(out, "summary.txt"));
  rep.write_samples_csv(join(out, "samples.csv"));
  write_solution_files(out, sol, body, cfg.dump_matrix);
  if (!ok) {
    std::cerr << "property violation: min Hessian eigenvalue " << rep.min_lambda_min << " < -" << cfg.concavity_floor
              << '\n';
    return kExitPropertyViolation;
  }
  return kExitOk;
}

void record_sweep(Summary& s, const BMSweepResult& r, double eps) {
  s.set("h", r.h);
  s.set("lambda0", r.lambda0());
  s.set("lambda1", r.lambda1());
  s.set("support_error", r.support_error);
  s.set("eps_bm", eps);
  s.set("min_gap", r.min_gap());
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    s.set("gap_" + std::to_string(i), r.entries[i].gap);
  }
}

int cmd_bm_sweep(const RunConfig& cfg, const fs::path& out) {
  const ConvexPolygon& k0 = cfg.body("k0");
  const ConvexPolygon& k1 = cfg.body("k1");
  const BMSweepResult r = sweep(k0, k1, interior_tvals(cfg), cfg.solver);
  const double eps = cfg.bm_tolerance.value_or(bm_tolerance(r.lambda0(), cfg.h));
  Summary s;
  s.set("command", std::string("bm-sweep"));
  record_sweep(s, r, eps);
  const bool ok = r.min_gap() >= -eps;
  s.set("inequality_holds", std::string(ok ? "true" : "false"));
  s.write(join(out, "summary.txt"));
  r.write_csv(join(out, "sweep.csv"));
  if (!ok) {
    std::cerr << "property violation: gap " << r.min_gap() << " below -eps_bm = " << -eps << '\n';
    return kExitPropertyViolation;
  }
  return kExitOk;
}

int cmd_translate_probe(const RunConfig& cfg, const fs::path& out) {
  const ConvexPolygon& body = cfg.primary_body();
  const std::vector<double> ts = interior_tvals(cfg);
  const BMSweepResult r = equality_probe(body, cfg.shift, ts, cfg.solver);
  Summary s;
  s.set("command", std::string("translate-probe"));
  s.set("shift_x", cfg.shift.x);
  s.set("shift_y", cfg.shift.y);
  record_sweep(s, r, cfg.bm_tolerance.value_or(bm_tolerance(r.lambda0(), cfg.h)));
  s.set("translate_family_error", translate_family_error(body, cfg.shift, ts));
  s.write(join(out, "summary.txt"));
  r.write_csv(join(out, "probe.csv"));
  return kExitOk;
}

int cmd_monotonicity(const RunConfig& cfg, const fs::path& out) {
  const MonotonicityResult r = monotonicity_check(cfg.body("inner"), cfg.body("outer"), cfg.solver);
  Summary s;
  s.set("command", std::string("monotonicity"));
  s.set("h", cfg.h);
  s.set("lambda_inner", r.lambda_inner);
  s.set("lambda_outer", r.lambda_outer);
  s.set("tolerance", r.tolerance);
  s.set("monotone", std::string(r.holds ? "true" : "false"));
  s.write(join(out, "summary.txt"));
  if (!r.holds) {
    std::cerr << "property violation: lambda_inner " << r.lambda_inner << " < lambda_outer " << r.lambda_outer << '\n';
    return kExitPropertyViolation;
  }
  return kExitOk;
}

int cmd_convergence(const RunConfig& cfg, const fs::path& out) {
  const ConvexPolygon& body = cfg.primary_body();
  const ConvergenceTable table = convergence_study(body, cfg.h_list, cfg.solver);
  Summary s;
  s.set("command", std::string("convergence"));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    s.set("lambda_" + std::to_string(i), table.rows[i].lambda);
  }
  s.set("observed_order", table.observed_order);
  s.set("extrapolated", table.extrapolated);
  if (cfg.values.count("oracle_radius")) {
    const double radius = std::stod(cfg.values.at("oracle_radius"));
    const double oracle = radial_disk_eigenvalue(radius).lambda;
    s.set("oracle", oracle);
    s.set("extrapolated_rel_error", std::abs(table.extrapolated - oracle) / oracle);
  }
  s.write(join(out, "summary.txt"));
  table.write_csv(join(out, "convergence.csv"));
  return kExitOk;
}

double required(const RunConfig& cfg, const std::string& key) {
  if (!cfg.values.count(key)) throw Error(ErrorCode::kInvalidConfig, "missing key '" + key + "'");
  const double v = std::stod(cfg.values.at(key));
  if (!(v > 0.0)) throw Error(ErrorCode::kInvalidConfig, key + " must be positive");
  return v;
}

int cmd_oracle(const RunConfig& cfg, const fs::path& out, bool disk) {
  const double size = required(cfg, disk ? "R" : "a");
  const ShootingResult r = disk ? radial_disk_eigenvalue(size) : interval_eigenvalue(size);
  Summary s;
  s.set("command", std::string(disk ? "oracle-disk" : "oracle-interval"));
  s.set(disk ? "R" : "a", size);
  s.set("lambda", r.lambda);
  s.set("bracket_width", r.bracket_width);
  s.set("endpoint_value", r.endpoint_value);
  s.write(join(out, "summary.txt"));
  write_profile_csv(r, join(out, "profile.csv"), disk ? "r" : "x");
  return kExitOk;
}

}  // namespace

void ConvergenceTable::write_csv(const std::string& path) const {
  const std::string header[] = {"h", "lambda", "residual", "iterations", "active_nodes"};
  CsvWriter csv(path, header);
  for (const ConvergenceRow& r : rows) {
    const double row[] = {r.h, r.lambda, r.residual, static_cast<double>(r.iterations), static_cast<double>(r.nodes)};
    csv.row(row);
  }
}

ConvergenceTable convergence_study(const ConvexPolygon& body, const std::vector<double>& h_list,
                                   const SolverConfig& cfg) {
  if (h_list.size() < 3) throw Error(ErrorCode::kInvalidConfig, "convergence study needs at least 3 grid sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    if (!(h_list[i] < h_list[i - 1])) throw Error(ErrorCode::kInvalidConfig, "h_list must be strictly decreasing");
  }
  ConvergenceTable table;
  table.rows.resize(h_list.size());
  parallel_for(h_list.size(), [&](std::size_t i) {
    SolverConfig level = cfg;
    level.h = h_list[i];
    const BodySolution s = solve_body(body, level);
    table.rows[i] = {h_list[i], s.eigen.lambda, s.eigen.residual_norm, s.eigen.iterations, s.grid.active_count()};
  });
  const std::size_t n = table.rows.size();
  const double l1 = table.rows[n - 3].lambda;
  const double l2 = table.rows[n - 2].lambda;
  const double l3 = table.rows[n - 1].lambda;
  const double ratio = h_list[n - 2] / h_list[n - 1];
  table.observed_order = std::log(std::abs((l1 - l2) / (l2 - l3))) / std::log(ratio);
  table.extrapolated = l3 + (l3 - l2) / (ratio * ratio - 1.0);
  return table;
}

int run(const std::string& command, const std::string& config_path, const std::optional<std::string>& out_dir) {
  try {
    const RunConfig cfg = load_config(config_path);
    const fs::path out = out_dir.value_or(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create output directory " + out.string());

    if (command == "solve") return cmd_solve(cfg, out);
    if (command == "concavity") return cmd_concavity(cfg, out);
    if (command == "bm-sweep") return cmd_bm_sweep(cfg, out);
    if (command == "translate-probe") return cmd_translate_probe(cfg, out);
    if (command == "monotonicity") return cmd_monotonicity(cfg, out);
    if (command == "convergence") return cmd_convergence(cfg, out);
    if (command == "oracle-interval") return cmd_oracle(cfg, out, false);
    if (command == "oracle-disk") return cmd_oracle(cfg, out, true);
    std::cerr << "unknown command '" << command << "'\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kNoConvergence:
      case ErrorCode::kInnerSolveBreakdown:
      case ErrorCode::kBracketNotFound:
        return kExitSolverFailure;
      default:
        return kExitInvalidInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace ouspec
