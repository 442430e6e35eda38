#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ouspec/bm_harness.hpp"
#include "ouspec/cli.hpp"
#include "ouspec/concavity.hpp"
#include "ouspec/error.hpp"
#include "ouspec/geometry.hpp"
#include "ouspec/measure.hpp"
#include "ouspec/oracle_1d.hpp"
#include "ouspec/pipeline.hpp"

namespace py = pybind11;
using namespace ouspec;

namespace {

std::vector<std::pair<double, double>> to_pairs(const ConvexPolygon& k) {
  std::vector<std::pair<double, double>> out;
  for (const Vec2& v : k.vertices()) out.emplace_back(v.x, v.y);
  return out;
}

ConvexPolygon from_pairs(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Vec2> v;
  v.reserve(pts.size());
  for (const auto& [x, y] : pts) v.push_back({x, y});
  return ConvexPolygon::validate(std::move(v));
}

SolverConfig make_config(double h, double tol, int maxit, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.h = h;
  cfg.solver.tol = tol;
  cfg.solver.maxit = maxit;
  cfg.solver.seed = seed;
  return cfg;
}

py::dict sweep_dict(const BMSweepResult& r) {
  py::list rows;
  for (const BMEntry& e : r.entries) {
    py::dict d;
    d["t"] = e.t;
    d["lambda"] = e.lambda;
    d["bound"] = e.bound;
    d["gap"] = e.gap;
    d["residual"] = e.residual;
    rows.append(d);
  }
  py::dict out;
  out["entries"] = rows;
  out["h"] = r.h;
  out["support_error"] = r.support_error;
  out["min_gap"] = r.min_gap();
  return out;
}

}  // namespace

PYBIND11_MODULE(_ouspec, m) {
  m.doc() = "First Dirichlet eigenvalue of the Ornstein-Uhlenbeck operator on convex polygons.";

  static py::exception<Error> error(m, "OuspecError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<ConvexPolygon>(m, "ConvexPolygon")
      .def(py::init(&from_pairs), py::arg("vertices"))
      .def_property_readonly("vertices", &to_pairs)
      .def_property_readonly("diameter", &ConvexPolygon::diameter)
      .def("support", [](const ConvexPolygon& k, double theta) { return support(k, Direction(theta)); })
      .def("contains", [](const ConvexPolygon& k, double x, double y, double tol) { return contains(k, {x, y}, tol); },
           py::arg("x"), py::arg("y"), py::arg("tol") = 0.0)
      .def("signed_distance", [](const ConvexPolygon& k, double x, double y) { return signed_distance(k, {x, y}); })
      .def("chebyshev_center",
           [](const ConvexPolygon& k) {
             const InscribedDisk d = chebyshev_center(k);
             return py::make_tuple(py::make_tuple(d.center.x, d.center.y), d.radius);
           })
      .def("translate", [](const ConvexPolygon& k, double dx, double dy) { return translate(k, {dx, dy}); });

  m.def("minkowski_combine", &minkowski_combine, py::arg("k0"), py::arg("k1"), py::arg("t"));
  m.def("random_convex_polygon",
        [](std::uint64_t seed, int m_, double radius, double cx, double cy) {
          return random_convex_polygon(seed, m_, radius, {cx, cy});
        },
        py::arg("seed"), py::arg("m"), py::arg("radius"), py::arg("cx") = 0.0, py::arg("cy") = 0.0);
  m.def("shape", [](const std::string& spec) { return shape_from_spec(spec); }, py::arg("spec"));
  m.def("gaussian_density", py::overload_cast<double, int>(&gaussian_density), py::arg("r"), py::arg("n") = 2);

  m.def(
      "solve",
      [](const ConvexPolygon& body, double h, double tol, int maxit, std::uint64_t seed) {
        const BodySolution s = solve_body(body, make_config(h, tol, maxit, seed));
        py::dict out;
        out["lambda"] = s.eigen.lambda;
        out["residual"] = s.eigen.residual_norm;
        out["iterations"] = s.eigen.iterations;
        out["active_nodes"] = s.grid.active_count();
        out["raw_asymmetry"] = s.pair.raw_asymmetry;
        std::vector<std::tuple<double, double, double>> nodes;
        for (std::size_t a = 0; a < s.grid.active_count(); ++a) {
          const Vec2 p = s.grid.position(s.grid.active_nodes()[a]);
          nodes.emplace_back(p.x, p.y, s.eigen.u[a]);
        }
        out["u"] = nodes;
        return out;
      },
      py::arg("body"), py::arg("h") = 0.02, py::arg("tol") = 1e-9, py::arg("maxit") = 500, py::arg("seed") = 0);

  m.def(
      "concavity",
      [](const ConvexPolygon& body, double h, double margin, double rank_tol, double tol) {
        const BodySolution s = solve_body(body, make_config(h, tol, 500, 0));
        const ConcavityReport r = concavity_report(s.eigen.lambda, s.u_field(), s.grid, body, margin, rank_tol);
        py::dict out;
        out["lambda"] = s.eigen.lambda;
        out["sample_count"] = r.sample_count;
        out["min_hessian_eig"] = r.min_lambda_min;
        out["max_hessian_eig"] = r.max_lambda_max;
        out["rank_histogram"] = std::vector<std::size_t>(r.rank_histogram.begin(), r.rank_histogram.end());
        out["residual_sup"] = r.residual_sup;
        out["trace_min"] = r.trace_min;
        return out;
      },
      py::arg("body"), py::arg("h") = 0.02, py::arg("margin") = 0.3, py::arg("rank_tol") = 1e-6,
      py::arg("tol") = 1e-9);

  m.def(
      "bm_sweep",
      [](const ConvexPolygon& k0, const ConvexPolygon& k1, const std::vector<double>& ts, double h, double tol) {
        return sweep_dict(sweep(k0, k1, ts, make_config(h, tol, 500, 0)));
      },
      py::arg("k0"), py::arg("k1"), py::arg("t"), py::arg("h") = 0.02, py::arg("tol") = 1e-9);

  m.def(
      "equality_probe",
      [](const ConvexPolygon& k, double dx, double dy, const std::vector<double>& ts, double h, double tol) {
        return sweep_dict(equality_probe(k, {dx, dy}, ts, make_config(h, tol, 500, 0)));
      },
      py::arg("body"), py::arg("dx"), py::arg("dy"), py::arg("t"), py::arg("h") = 0.02, py::arg("tol") = 1e-9);

  m.def("bm_tolerance", &bm_tolerance, py::arg("lambda0"), py::arg("h"));

  m.def(
      "monotonicity_check",
      [](const ConvexPolygon& inner, const ConvexPolygon& outer, double h, double tol) {
        const MonotonicityResult r = monotonicity_check(inner, outer, make_config(h, tol, 500, 0));
        return py::make_tuple(r.lambda_inner, r.lambda_outer, r.holds);
      },
      py::arg("inner"), py::arg("outer"), py::arg("h") = 0.02, py::arg("tol") = 1e-9);

  m.def(
      "convergence_study",
      [](const ConvexPolygon& body, const std::vector<double>& h_list, double tol) {
        const ConvergenceTable t = convergence_study(body, h_list, make_config(h_list.front(), tol, 500, 0));
        std::vector<double> lambdas;
        for (const ConvergenceRow& r : t.rows) lambdas.push_back(r.lambda);
        py::dict out;
        out["lambda"] = lambdas;
        out["observed_order"] = t.observed_order;
        out["extrapolated"] = t.extrapolated;
        return out;
      },
      py::arg("body"), py::arg("h_list"), py::arg("tol") = 1e-9);

  m.def("interval_eigenvalue", [](double a) { return interval_eigenvalue(a).lambda; }, py::arg("a"));
  m.def("radial_disk_eigenvalue", [](double r) { return radial_disk_eigenvalue(r).lambda; }, py::arg("radius"));

  m.def("run", [](const std::string& command, const std::string& config, std::optional<std::string> out) {
    return run(command, config, out);
  }, py::arg("command"), py::arg("config"), py::arg("out") = py::none());
}
