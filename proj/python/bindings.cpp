#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dcs/curvature.hpp"
#include "dcs/energy.hpp"
#include "dcs/errors.hpp"
#include "dcs/euclid.hpp"
#include "dcs/flow.hpp"
#include "dcs/hyper.hpp"
#include "dcs/io.hpp"
#include "dcs/verify.hpp"

namespace py = pybind11;

namespace {

dcs::WeightScheme scheme_from(const dcs::TriangulatedSurface& surface, const std::vector<int>& epsilon,
                              const std::map<std::pair<int, int>, double>& eta) {
  dcs::WeightScheme scheme;
  scheme.epsilon = epsilon;
  if (scheme.epsilon.empty()) scheme.epsilon.assign(static_cast<std::size_t>(surface.vertex_count()), 1);
  for (const auto& [edge, value] : eta) scheme.set_eta(edge.first, edge.second, value);
  return scheme;
}

py::dict flow_dict(const dcs::FlowTrace& trace) {
  py::dict d;
  d["status"] = std::string(dcs::flow_status_name(trace.status));
  d["times"] = trace.times;
  d["errors"] = trace.errors;
  d["sum_u"] = trace.sum_u;
  d["accepted_steps"] = trace.accepted_steps;
  d["rejected_steps"] = trace.rejected_steps;
  d["f"] = trace.final_state.f;
  d["final_error"] = trace.final_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete conformal structures on closed triangulated surfaces";

  static py::exception<dcs::Error> dcs_error(m, "DcsError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dcs::Error& e) {
      py::object err = dcs_error;
      py::object exc = err(e.what());
      exc.attr("code") = std::string(dcs::error_code_name(e.code()));
      PyErr_SetObject(dcs_error.ptr(), exc.ptr());
    }
  });

  py::enum_<dcs::Background>(m, "Background")
      .value("Euclidean", dcs::Background::Euclidean)
      .value("Hyperbolic", dcs::Background::Hyperbolic);

  py::class_<dcs::TriangulatedSurface>(m, "Surface")
      .def(py::init([](int n, std::vector<dcs::Face> faces) { return dcs::TriangulatedSurface::build(n, std::move(faces)); }),
           py::arg("vertex_count"), py::arg("faces"))
      .def_static("tetrahedron", &dcs::make_tetrahedron)
      .def_static("octahedron", &dcs::make_octahedron)
      .def_static("icosahedron", &dcs::make_icosahedron)
      .def_static("torus", &dcs::make_torus, py::arg("rows"), py::arg("cols"))
      .def_static("read", &dcs::read_mesh, py::arg("path"))
      .def_property_readonly("vertex_count", &dcs::TriangulatedSurface::vertex_count)
      .def_property_readonly("edge_count", &dcs::TriangulatedSurface::edge_count)
      .def_property_readonly("face_count", &dcs::TriangulatedSurface::face_count)
      .def_property_readonly("faces", &dcs::TriangulatedSurface::faces)
      .def_property_readonly("euler_characteristic", &dcs::TriangulatedSurface::euler_characteristic)
      .def("edges", [](const dcs::TriangulatedSurface& s) {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : s.edges()) out.emplace_back(e.a, e.b);
        return out;
      });

  py::class_<dcs::WeightedSurface>(m, "WeightedSurface")
      .def(py::init([](const dcs::TriangulatedSurface& s, const std::vector<int>& epsilon,
                       const std::map<std::pair<int, int>, double>& eta) {
             return dcs::WeightedSurface(s, scheme_from(s, epsilon, eta));
           }),
           py::arg("surface"), py::arg("epsilon"), py::arg("eta"))
      .def_static(
          "uniform",
          [](const dcs::TriangulatedSurface& s, int epsilon, double eta) {
            return dcs::WeightedSurface(s, dcs::WeightScheme::uniform(s, epsilon, eta));
          },
          py::arg("surface"), py::arg("epsilon"), py::arg("eta"))
      .def("violations",
           [](const dcs::WeightedSurface& ws) {
             std::vector<std::string> out;
             for (const auto& v : dcs::validate_scheme(ws.surface(), ws.scheme()).violations) out.push_back(v.describe());
             return out;
           })
      .def("eta", &dcs::WeightedSurface::eta)
      .def("epsilon", &dcs::WeightedSurface::epsilon);

  m.def(
      "curvature",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& f, dcs::Background b, bool extended) {
        return dcs::vertex_curvature(ws, dcs::ConformalState{b, f}, extended).values;
      },
      py::arg("ws"), py::arg("f"), py::arg("background") = dcs::Background::Euclidean, py::arg("extended") = true);
  m.def(
      "degenerate_faces",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& f, dcs::Background b) {
        return dcs::evaluate_surface(ws, dcs::ConformalState{b, f}, false).degenerate_faces;
      },
      py::arg("ws"), py::arg("f"), py::arg("background") = dcs::Background::Euclidean);
  m.def(
      "curvature_jacobian",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& f, dcs::Background b) {
        return dcs::curvature_jacobian(ws, dcs::ConformalState{b, f});
      },
      py::arg("ws"), py::arg("f"), py::arg("background") = dcs::Background::Euclidean);
  m.def(
      "ricci_energy",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& u, dcs::Background b) {
        return dcs::ricci_energy(ws, u, b, true);
      },
      py::arg("ws"), py::arg("u"), py::arg("background") = dcs::Background::Euclidean);
  m.def(
      "euclidean_threshold",
      [](int epsilon, double eta, int corner, double r_s, double r_t) {
        return dcs::degenerate_interval_e(dcs::FaceWeights::uniform(epsilon, eta), corner, r_s, r_t);
      },
      py::arg("epsilon"), py::arg("eta"), py::arg("corner"), py::arg("r_s"), py::arg("r_t"));

  m.def(
      "flow",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& f0, const Eigen::VectorXd& k_bar, dcs::Background b,
         const std::string& method, double dt, double t_max, double tol, bool extended) {
        dcs::FlowOptions opts;
        opts.dt = dt;
        opts.t_max = t_max;
        opts.tol = tol;
        opts.extended = extended;
        opts.validate();
        const dcs::ConformalState s0{b, f0};
        if (method == "calabi") return flow_dict(dcs::run_calabi(ws, s0, k_bar, opts));
        opts.method = dcs::parse_flow_method(method);
        return flow_dict(dcs::run_extended_ricci(ws, s0, k_bar, opts));
      },
      py::arg("ws"), py::arg("f0"), py::arg("k_bar"), py::arg("background") = dcs::Background::Euclidean,
      py::arg("method") = "rk4", py::arg("dt") = 0.01, py::arg("t_max") = 1000.0, py::arg("tol") = 1e-9,
      py::arg("extended") = true);
  m.def(
      "solve",
      [](const dcs::WeightedSurface& ws, const Eigen::VectorXd& f0, const Eigen::VectorXd& k_bar, dcs::Background b,
         double tol) {
        dcs::FlowOptions opts;
        opts.tol = tol;
        const dcs::SolveResult r = dcs::newton_solve(ws, dcs::ConformalState{b, f0}, k_bar, opts);
        py::dict d;
        d["f"] = r.state.f;
        d["iterations"] = r.iterations;
        d["error"] = r.error;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("ws"), py::arg("f0"), py::arg("k_bar"), py::arg("background") = dcs::Background::Euclidean,
      py::arg("tol") = 1e-9);
  m.def(
      "verify_builtin",
      [](std::uint64_t seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : dcs::verify_builtin(seed)) out.emplace_back(c.name, c.pass, c.detail);
        return out;
      },
      py::arg("seed") = 1);
}
