#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/pipeline.hpp"

namespace ouspec {

/// Exit codes of the command-line runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitSolverFailure = 2,
  kExitPropertyViolation = 3,
};

/// Reads a polygon file: one "x y" pair per line, '#' starts a comment.
std::vector<Vec2> read_polygon_file(const std::string& path);

/// Parsed run configuration. Flat "key = value" lines; "[body.NAME]" opens a
/// body block whose keys are shape, vertices, file, center, translate.
struct RunConfig {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, ConvexPolygon>> bodies;

  double h = 0.02;
  double margin = 0.3;
  SolverConfig solver;
  std::vector<double> tvals;
  std::vector<double> h_list;
  std::string out_dir = "ouspec_out";
  double rank_tol = 1e-6;
  double concavity_floor = 1e-3;
  std::optional<double> bm_tolerance;
  Vec2 shift{1.0, 0.0};
  bool dump_matrix = false;

  const ConvexPolygon& body(const std::string& name) const;
  /// `name` if present, else the first body.
  const ConvexPolygon& primary_body(const std::string& name = "main") const;
};

/// Throws Error(kInvalidConfig, ...) on malformed input, including delta < 3h.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

/// Builds a body from a shape spec: "square a", "rectangle a b",
/// "regular m r", "disk m r" (equal-area m-gon), "random seed m r".
ConvexPolygon shape_from_spec(const std::string& spec, Vec2 center = {});

struct ConvergenceRow {
  double h = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::size_t nodes = 0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// From the last three levels: log((l1 - l2) / (l2 - l3)) / log(h2 / h3).
  double observed_order = 0.0;
  /// Richardson value assuming the formal second order on the last two levels.
  double extrapolated = 0.0;

  void write_csv(const std::string& path) const;
};

/// h_list must be strictly decreasing with at least 3 entries (kInvalidConfig).
ConvergenceTable convergence_study(const ConvexPolygon& body, const std::vector<double>& h_list,
                                   const SolverConfig& cfg);

/// Executes one command: solve, concavity, bm-sweep, translate-probe,
/// monotonicity, convergence, oracle-interval, oracle-disk. Returns an ExitCode.
int run(const std::string& command, const std::string& config_path,
        const std::optional<std::string>& out_dir = std::nullopt);

}  // namespace ouspec
