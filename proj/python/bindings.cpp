#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jbmaslov/io.hpp"
#include "jbmaslov/random.hpp"
#include "jbmaslov/verify.hpp"

namespace py = pybind11;
using namespace jbmaslov;

namespace {

py::dict report_dict(const IndexReport& r) {
  py::list segments;
  for (const auto& s : r.segments) {
    py::dict d;
    d["t_start"] = s.t_start;
    d["t_end"] = s.t_end;
    d["epsilon"] = s.epsilon;
    d["k_start"] = s.k_start;
    d["k_end"] = s.k_end;
    d["certified"] = s.certified;
    segments.append(d);
  }
  py::dict out;
  out["value"] = r.value;
  out["certified"] = r.certified;
  out["refinements"] = r.refinements;
  out["segments"] = segments;
  return out;
}

std::vector<std::pair<double, int>> spectrum_list(const RelativeSpectrum& s) {
  std::vector<std::pair<double, int>> out;
  for (const auto& c : s.clusters()) out.emplace_back(c.angle, c.multiplicity);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maslov index of paths of complex symmetric unitary matrices";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<SymUnitary>(m, "SymUnitary")
      .def(py::init([](const CMatrix& x, double tol) { return SymUnitary::from_matrix(x, tol); }),
           py::arg("matrix"), py::arg("tol") = kTolStruct)
      .def_static("identity", &SymUnitary::identity)
      .def_static("diagonal", [](const std::vector<double>& a) { return SymUnitary::diagonal(a); })
      .def_static("frame_diagonal",
                  [](const RMatrix& frame, const std::vector<double>& a) {
                    return SymUnitary::frame_diagonal(frame, a, 1e-8);
                  })
      .def_property_readonly("matrix", &SymUnitary::matrix)
      .def_property_readonly("n", &SymUnitary::dimension)
      .def("__repr__", [](const SymUnitary& x) { return "<SymUnitary n=" + std::to_string(x.dimension()) + ">"; });

  m.def("triple_product", &triple_product, py::arg("x"), py::arg("y"), py::arg("z"));
  m.def("jordan_inverse", &jordan_inverse, py::arg("x"), py::arg("e"));
  m.def("bergman_matrix", [](const CMatrix& x, const CMatrix& y) { return bergman(x, y).dense(); },
        py::arg("x"), py::arg("y"));
  m.def(
      "validate_axioms",
      [](const CMatrix& x, const CMatrix& y, const CMatrix& z, const CMatrix& u, const CMatrix& v) {
        const AxiomResiduals r = validate_axioms(x, y, z, u, v);
        return std::make_pair(r.triple_identity, r.norm_axiom);
      },
      "Returns (triple identity residual, norm axiom relative error).");

  m.def("relative_spectrum",
        [](const SymUnitary& x, const SymUnitary& e, double tol) { return spectrum_list(relative_spectrum(x, e, tol)); },
        py::arg("x"), py::arg("e"), py::arg("tol_cluster") = kTolCluster,
        "List of (angle, multiplicity) clusters of x relative to e.");
  m.def("mu", &mu, py::arg("x"), py::arg("e"), py::arg("theta") = 0.0, py::arg("tol_cluster") = kTolCluster);
  m.def("perturbation_budget", &perturbation_budget, py::arg("x"), py::arg("e"), py::arg("eps"),
        py::arg("tol_cluster") = kTolCluster);
  m.def("dim_intersection", [](const SymUnitary& x, const SymUnitary& y) { return pair_report(x, y).dim_intersection; });

  m.def("lagrangian_to_tripotent",
        [](const RMatrix& frame) { return lagrangian_to_tripotent(LagrangianFrame::from_basis(frame, 1e-8)); },
        py::arg("frame"));
  m.def("tripotent_to_lagrangian", [](const SymUnitary& x) { return tripotent_to_lagrangian(x).frame(); },
        py::arg("x"));
  m.def(
      "kashiwara_index",
      [](const RMatrix& a, const RMatrix& b, const RMatrix& c) {
        return kashiwara_index(LagrangianFrame::from_basis(a, 1e-8), LagrangianFrame::from_basis(b, 1e-8),
                               LagrangianFrame::from_basis(c, 1e-8));
      },
      py::arg("l1"), py::arg("l2"), py::arg("l3"));

  py::class_<TripotentPath>(m, "TripotentPath")
      .def_static(
          "frame_diagonal",
          [](const RMatrix& frame, std::vector<double> knots, const RMatrix& angles) {
            return TripotentPath::frame_diagonal(frame, std::move(knots), angles, 1e-8);
          },
          py::arg("frame"), py::arg("knots"), py::arg("angles"))
      .def_static("sampled", &TripotentPath::sampled, py::arg("params"), py::arg("points"))
      .def_static("from_json", [](const std::string& text) { return parse_path(Json::parse(text)).path; })
      .def("to_json", [](const TripotentPath& p) { return path_to_json(p).dump(); })
      .def("at", &TripotentPath::at)
      .def_property_readonly("n", &TripotentPath::dimension)
      .def("__add__", [](const TripotentPath& p, const TripotentPath& q) { return concatenate(p, q, 1e-8); })
      .def("reversed", [](const TripotentPath& p) { return reverse(p); });

  m.def(
      "maslov_index",
      [](const TripotentPath& path, const SymUnitary& e, int max_refine, int samples) {
        IndexOptions opt;
        opt.max_refine = max_refine;
        opt.initial_samples = samples;
        return report_dict(maslov_index(path, e, opt));
      },
      py::arg("path"), py::arg("e"), py::arg("max_refine") = 20, py::arg("samples") = 64);
  m.def("winding_number", [](const TripotentPath& p, const SymUnitary& e) { return winding_number_det(p, e); },
        py::arg("path"), py::arg("e"));

  m.def(
      "check_formula_e",
      [](const SymUnitary& sigma, double sigma_lift, const SymUnitary& tau, double tau_lift, const SymUnitary& e) {
        const FormulaECheck c = check_formula_E(LiftedPoint(sigma, sigma_lift), LiftedPoint(tau, tau_lift), e);
        py::dict d;
        d["lhs"] = c.lhs;
        d["rhs"] = c.rhs();
        d["equal"] = c.equal;
        d["m"] = c.m;
        d["iota"] = c.iota;
        return d;
      },
      py::arg("sigma"), py::arg("sigma_lift"), py::arg("tau"), py::arg("tau_lift"), py::arg("e"),
      "Both lifts are relative to the identity.");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, int count) {
        const SuiteResult r = run_suite(suite, seed, count);
        return py::make_tuple(r.passed(), r.cases, r.failures, r.diagnostics);
      },
      py::arg("suite"), py::arg("seed") = 0, py::arg("count") = 20,
      "Returns (passed, cases, failures, diagnostics).");
}
