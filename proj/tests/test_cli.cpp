#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "ouspec/cli.hpp"
#include "ouspec/error.hpp"

namespace fs = std::filesystem;
using namespace ouspec;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("ouspec_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Invocation {
  int code;
  std::string err;
};

Invocation invoke(const std::string& command, const fs::path& cfg, const fs::path& out) {
  const fs::path err = out / "stderr.txt";
  const std::string cmd = std::string(OUSPEC_CLI_PATH) + " " + command + " --config " + cfg.string() + " --out " +
                          (out / "result").string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(err)};
}

std::map<std::string, std::string> summary(const fs::path& p) {
  std::map<std::string, std::string> kv;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

const char* kSquareSolve = "h = 0.05\n[body.main]\nshape = square 1\n";

}  // namespace

TEST(Cli, SolveSquare) {
  const fs::path dir = scratch("solve");
  const Invocation r = invoke("solve", write_config(dir, kSquareSolve), dir);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto s = summary(dir / "result" / "summary.txt");
  EXPECT_GT(std::stod(s.at("lambda")), 0.0);
  EXPECT_LE(std::stod(s.at("residual")), 1e-9);
  EXPECT_TRUE(fs::exists(dir / "result" / "solution.csv"));
  EXPECT_TRUE(fs::exists(dir / "result" / "heatmap.svg"));
}

TEST(Cli, MarginBelowThreeH) {
  const fs::path dir = scratch("delta");
  const Invocation r = invoke("concavity", write_config(dir, "h = 0.05\ndelta = 0.05\n[body.main]\nshape = square 1\n"), dir);
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("delta >= 3h"), std::string::npos) << r.err;
}

TEST(Cli, IdenticalBodySweep) {
  const fs::path dir = scratch("sweep");
  const Invocation r = invoke(
      "bm-sweep", write_config(dir, "h = 0.05\n[body.k0]\nshape = square 1\n[body.k1]\nshape = square 1\n"), dir);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(dir / "result" / "sweep.csv");
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(ss, cell, ',');
    EXPECT_LE(std::abs(std::stod(cell)), 2e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 11u);
}

TEST(Cli, PropertyViolationExitCode) {
  // A negative allowance demands a strictly positive gap, which identical bodies cannot have.
  const fs::path dir = scratch("violation");
  const Invocation r = invoke(
      "bm-sweep",
      write_config(dir, "h = 0.05\neps_bm = -1\nt = 0.5\n[body.k0]\nshape = square 1\n[body.k1]\nshape = square 1\n"),
      dir);
  EXPECT_EQ(r.code, kExitPropertyViolation) << r.err;
}

TEST(Cli, SolverFailureExitCode) {
  const fs::path dir = scratch("maxit");
  const Invocation r = invoke("solve", write_config(dir, "h = 0.05\nmaxit = 1\n[body.main]\nshape = square 1\n"), dir);
  EXPECT_EQ(r.code, kExitSolverFailure) << r.err;
}

TEST(Cli, InvalidInputs) {
  const fs::path dir = scratch("invalid");
  EXPECT_EQ(invoke("convergence", write_config(dir, "h_list = 0.08, 0.04, 0.04\n[body.main]\nshape = square 1\n"), dir).code,
            kExitInvalidInput);
  EXPECT_EQ(invoke("solve", write_config(dir, "bogus = 1\n[body.main]\nshape = square 1\n"), dir).code,
            kExitInvalidInput);
  EXPECT_EQ(invoke("solve", write_config(dir, "[body.main]\nvertices = 0 0; 1 0; 2 0; 0 1\n"), dir).code,
            kExitInvalidInput);
  EXPECT_EQ(invoke("solve", dir / "missing.cfg", dir).code, kExitInvalidInput);
  EXPECT_EQ(invoke("frobnicate", write_config(dir, kSquareSolve), dir).code, kExitInvalidInput);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const std::string text = "h = 0.05\ndelta = 0.3\n[body.main]\nshape = random 7 6 1.5\n";
  ASSERT_EQ(invoke("concavity", write_config(a, text), a).code, kExitOk);
  ASSERT_EQ(invoke("concavity", write_config(b, text), b).code, kExitOk);
  for (const char* f : {"summary.txt", "samples.csv", "solution.csv", "heatmap.svg"}) {
    EXPECT_EQ(slurp(a / "result" / f), slurp(b / "result" / f)) << f;
    EXPECT_FALSE(slurp(a / "result" / f).empty()) << f;
  }
}

TEST(Cli, OracleDisk) {
  const fs::path dir = scratch("oracle");
  ASSERT_EQ(invoke("oracle-disk", write_config(dir, "R = 1.4142135623730951\n"), dir).code, kExitOk);
  EXPECT_NEAR(std::stod(summary(dir / "result" / "summary.txt").at("lambda")), 2.0, 1e-7);
  EXPECT_TRUE(fs::exists(dir / "result" / "profile.csv"));
}

TEST(Config, ParsesBodiesAndKeys) {
  const RunConfig c = parse_config(
      "# comment\nh = 0.04\ndelta = 0.2\nt = 0.25, 0.5\n[body.k0]\nshape = rectangle 2 1\ncenter = 0.5 0\n"
      "[body.k1]\nvertices = 0 0; 1 0; 0 1\ntranslate = 1 1\n");
  EXPECT_EQ(c.h, 0.04);
  EXPECT_EQ(c.solver.h, 0.04);
  EXPECT_EQ(c.margin, 0.2);
  EXPECT_EQ(c.tvals, (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(c.bodies.size(), 2u);
  EXPECT_NEAR(support(c.body("k0"), Direction(0.0)), 2.5, 1e-12);
  EXPECT_NEAR(support(c.body("k1"), Direction(0.0)), 2.0, 1e-12);
  EXPECT_THROW(c.body("nope"), Error);
  EXPECT_THROW(parse_config("[body.a]\nshape = square 1\nvertices = 0 0; 1 0; 0 1\n"), Error);
  EXPECT_THROW(parse_config("t = 1.5\n"), Error);
  EXPECT_THROW(parse_config("h = -1\n"), Error);
}
