#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ouspec/cli.hpp"
#include "ouspec/error.hpp"
#include "ouspec/pipeline.hpp"

namespace ouspec {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); }

double parse_number(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    invalid(context + ": cannot parse number '" + t + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string text, const std::string& context) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  std::vector<double> out;
  for (std::string tok; is >> tok;) out.push_back(parse_number(tok, context));
  return out;
}

Vec2 parse_vec(const std::string& text, const std::string& context) {
  const std::vector<double> v = parse_list(text, context);
  if (v.size() != 2) invalid(context + ": expected two numbers");
  return {v[0], v[1]};
}

long long parse_integer(const std::string& text, const std::string& context) {
  const double v = parse_number(text, context);
  if (v != std::floor(v)) invalid(context + ": expected an integer");
  return static_cast<long long>(v);
}

struct BodyBlock {
  std::string name;
  std::map<std::string, std::string> keys;
};

ConvexPolygon build_body(const BodyBlock& block, const std::string& base_dir) {
  const std::string ctx = "body." + block.name;
  static const std::set<std::string> known{"shape", "vertices", "file", "center", "translate"};
  for (const auto& [k, v] : block.keys) {
    if (!known.count(k)) invalid(ctx + ": unknown key '" + k + "'");
  }
  const int sources = static_cast<int>(block.keys.count("shape") + block.keys.count("vertices") +
                                       block.keys.count("file"));
  if (sources != 1) invalid(ctx + ": give exactly one of shape, vertices, file");

  const Vec2 center = block.keys.count("center") ? parse_vec(block.keys.at("center"), ctx + ".center") : Vec2{};
  std::optional<ConvexPolygon> body;
  if (auto it = block.keys.find("shape"); it != block.keys.end()) {
    body = shape_from_spec(it->second, center);
  } else {
    std::vector<Vec2> pts;
    if (auto v = block.keys.find("vertices"); v != block.keys.end()) {
      std::istringstream is(v->second);
      for (std::string pair; std::getline(is, pair, ';');) {
        if (!trim(pair).empty()) pts.push_back(parse_vec(pair, ctx + ".vertices"));
      }
    } else {
      std::filesystem::path p = block.keys.at("file");
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      pts = read_polygon_file(p.string());
    }
    for (Vec2& q : pts) q = q + center;
    body = ConvexPolygon::validate(std::move(pts));
  }
  if (auto it = block.keys.find("translate"); it != block.keys.end()) {
    body = translate(*body, parse_vec(it->second, ctx + ".translate"));
  }
  return *body;
}

}  // namespace

std::vector<Vec2> read_polygon_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kInvalidConfig, "cannot read polygon file " + path);
  std::vector<Vec2> pts;
  int lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    pts.push_back(parse_vec(body, path + ":" + std::to_string(lineno)));
  }
  return pts;
}

ConvexPolygon shape_from_spec(const std::string& spec, Vec2 center) {
  std::istringstream is(spec);
  std::string kind;
  is >> kind;
  std::vector<std::string> args;
  for (std::string a; is >> a;) args.push_back(a);
  auto need = [&](std::size_t n) {
    if (args.size() != n) invalid("shape '" + kind + "' takes " + std::to_string(n) + " arguments");
  };
  const std::string ctx = "shape " + kind;
  if (kind == "square") {
    need(1);
    const double a = parse_number(args[0], ctx);
    return rectangle(center.x - a, center.x + a, center.y - a, center.y + a);
  }
  if (kind == "rectangle") {
    need(2);
    const double a = parse_number(args[0], ctx);
    const double b = parse_number(args[1], ctx);
    return rectangle(center.x - a, center.x + a, center.y - b, center.y + b);
  }
  if (kind == "regular") {
    need(2);
    return regular_polygon(static_cast<int>(parse_integer(args[0], ctx)), parse_number(args[1], ctx), center);
  }
  if (kind == "disk") {
    need(2);
    return disk_polygon(static_cast<int>(parse_integer(args[0], ctx)), parse_number(args[1], ctx), center);
  }
  if (kind == "random") {
    need(3);
    const long long seed = parse_integer(args[0], ctx);
    if (seed < 0) invalid(ctx + ": seed must be nonnegative");
    const double r = parse_number(args[2], ctx);
    if (!(r > 0.0)) invalid(ctx + ": radius must be positive");
    return random_convex_polygon(static_cast<std::uint64_t>(seed), static_cast<int>(parse_integer(args[1], ctx)), r,
                                 center);
  }
  invalid("unknown shape '" + kind + "'");
}

const ConvexPolygon& RunConfig::body(const std::string& name) const {
  for (const auto& [n, b] : bodies) {
    if (n == name) return b;
  }
  invalid("config has no [body." + name + "] block");
}

const ConvexPolygon& RunConfig::primary_body(const std::string& name) const {
  if (bodies.empty()) invalid("config defines no body");
  for (const auto& [n, b] : bodies) {
    if (n == name) return b;
  }
  return bodies.front().second;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  static const std::set<std::string> known{"h",       "delta",      "tol",      "maxit",  "seed",  "t",
                                           "h_list",  "out",        "rank_tol", "eps_conc", "eps_bm", "shift",
                                           "dump_matrix", "scaling",  "a",        "R",      "oracle_radius"};
  RunConfig cfg;
  std::vector<BodyBlock> blocks;
  std::istringstream is(text);
  int lineno = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']' || line.rfind("[body.", 0) != 0 || line.size() <= 7) {
        invalid(where + ": expected [body.NAME]");
      }
      const std::string name = line.substr(6, line.size() - 7);
      for (const BodyBlock& b : blocks) {
        if (b.name == name) invalid(where + ": duplicate body '" + name + "'");
      }
      blocks.push_back({name, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) invalid(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) invalid(where + ": empty key");
    if (!blocks.empty()) {
      blocks.back().keys[key] = value;
    } else {
      if (!known.count(key)) invalid(where + ": unknown key '" + key + "'");
      cfg.values[key] = value;
    }
  }

  const auto& v = cfg.values;
  auto num = [&](const std::string& key, double fallback) {
    return v.count(key) ? parse_number(v.at(key), key) : fallback;
  };
  cfg.h = num("h", cfg.h);
  cfg.margin = num("delta", cfg.margin);
  cfg.solver.h = cfg.h;
  cfg.solver.solver.tol = num("tol", cfg.solver.solver.tol);
  if (v.count("maxit")) cfg.solver.solver.maxit = static_cast<int>(parse_integer(v.at("maxit"), "maxit"));
  if (v.count("seed")) {
    const long long s = parse_integer(v.at("seed"), "seed");
    if (s < 0) invalid("seed must be nonnegative");
    cfg.solver.solver.seed = static_cast<std::uint64_t>(s);
  }
  if (v.count("t")) cfg.tvals = parse_list(v.at("t"), "t");
  if (v.count("h_list")) cfg.h_list = parse_list(v.at("h_list"), "h_list");
  if (v.count("out")) cfg.out_dir = v.at("out");
  cfg.rank_tol = num("rank_tol", cfg.rank_tol);
  cfg.concavity_floor = num("eps_conc", cfg.concavity_floor);
  if (v.count("eps_bm")) cfg.bm_tolerance = parse_number(v.at("eps_bm"), "eps_bm");
  if (v.count("shift")) cfg.shift = parse_vec(v.at("shift"), "shift");
  if (v.count("dump_matrix")) {
    const std::string& d = v.at("dump_matrix");
    if (d != "true" && d != "false") invalid("dump_matrix must be true or false");
    cfg.dump_matrix = d == "true";
  }
  if (v.count("scaling")) {
    const std::string& s = v.at("scaling");
    if (s == "cell-volume") {
      cfg.solver.scaling = CutRowScaling::kCellVolume;
    } else if (s == "leg-averaged") {
      cfg.solver.scaling = CutRowScaling::kLegAveraged;
    } else {
      invalid("scaling must be cell-volume or leg-averaged");
    }
  }

  if (!(cfg.h > 0.0)) invalid("h must be positive");
  if (!(cfg.margin >= 3.0 * cfg.h)) {
    std::ostringstream msg;
    msg << "delta = " << cfg.margin << " violates the rule delta >= 3h (3h = " << 3.0 * cfg.h << ")";
    invalid(msg.str());
  }
  if (!(cfg.solver.solver.tol > 0.0)) invalid("tol must be positive");
  if (cfg.solver.solver.maxit < 1) invalid("maxit must be at least 1");
  for (const double t : cfg.tvals) {
    if (!(t >= 0.0 && t <= 1.0)) invalid("t values must lie in [0,1]");
  }
  for (const double h : cfg.h_list) {
    if (!(h > 0.0)) invalid("h_list entries must be positive");
  }

  for (const BodyBlock& b : blocks) cfg.bodies.emplace_back(b.name, build_body(b, base_dir));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kInvalidConfig, "cannot read config " + path);
  std::ostringstream text;
  text << is.rdbuf();
  return parse_config(text.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace ouspec
