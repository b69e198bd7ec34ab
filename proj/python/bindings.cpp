#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxsurf/invariants.hpp"
#include "maxsurf/jobconfig.hpp"
#include "maxsurf/pdeverify.hpp"
#include "maxsurf/surface.hpp"
#include "maxsurf/transforms.hpp"

namespace py = pybind11;
using namespace maxsurf;

namespace {

GridSpec grid_from(double u0, double u1, double v0, double v1, int nu, int nv) {
    return GridSpec::make(u0, u1, v0, v1, nu, nv);
}

py::dict sample_dict(const InvariantSample& s) {
    py::dict d;
    d["E"] = s.E;
    d["K"] = s.K;
    d["kappa"] = s.kappa;
    d["nu"] = s.nu;
    d["mu"] = s.mu;
    d["near_degenerate"] = s.near_degenerate;
    return d;
}

}  // namespace

PYBIND11_MODULE(_maxsurf, m) {
    m.doc() = "maximal space-like surfaces in the neutral 4-space";

    py::register_exception<ParseError>(m, "ExpressionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvaluationError", PyExc_ArithmeticError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

    py::class_<HolExpr>(m, "Expr")
        .def(py::init([](const std::string& src) { return parse(src); }))
        .def("__call__", [](const HolExpr& e, Complex t) { return e(t); })
        .def("deriv", &HolExpr::derivative)
        .def("__str__", &HolExpr::str)
        .def("compose", &HolExpr::compose);

    m.def("canonical_invariants",
          [](const std::string& g1, const std::string& g2, Complex t, int branch_sign) {
              HolPair p{parse(g1), parse(g2), branch_sign};
              return sample_dict(canonical_invariants(p, t));
          },
          py::arg("g1"), py::arg("g2"), py::arg("t"), py::arg("branch_sign") = 1);

    m.def("general_invariants",
          [](const std::string& f, const std::string& g1, const std::string& g2, Complex t) {
              GeneralInvariants r = general_invariants(HolTriple{parse(f), parse(g1), parse(g2)}, t);
              py::dict d;
              d["E"] = r.E;
              d["K"] = r.K;
              d["kappa"] = r.kappa;
              return d;
          });

    m.def("r31_invariants", [](const std::string& g, Complex t) {
        R31Invariants r = r31_invariants(parse(g), t);
        py::dict d;
        d["E"] = r.E;
        d["nu"] = r.nu;
        return d;
    });

    m.def("curvatures_from_normal", &curvatures_from_normal);
    m.def("normal_from_curvatures", &normal_from_curvatures);
    m.def("E_from_curvatures", &E_from_curvatures);
    m.def("correspond_to_r42", &correspond_to_r42);
    m.def("correspond_from_r42", &correspond_from_r42);
    m.def("geometric_mean_E", &geometric_mean_E);

    m.def("canonical_parameter",
          [](const std::string& f, const std::string& g1, const std::string& g2, Complex t0,
             Complex t) {
              return canonical_parameter(HolTriple{parse(f), parse(g1), parse(g2)}, t0, t);
          });

    m.def("invariant_field_csv",
          [](const std::string& g1, const std::string& g2, double u0, double u1, double v0,
             double v1, int nu, int nv) {
              HolPair p{parse(g1), parse(g2)};
              return invariant_field_csv(invariant_field(p, grid_from(u0, u1, v0, v1, nu, nv)));
          });

    m.def("patch_csv",
          [](const std::string& g1, const std::string& g2, double u0, double u1, double v0,
             double v1, int nu, int nv, Complex t0, double theta) {
              HolPair p{parse(g1), parse(g2)};
              SurfacePatch patch =
                  build_patch(PhiSource{p}, grid_from(u0, u1, v0, v1, nu, nv), t0, theta);
              return export_patch(patch, PatchFormat::Csv4d);
          },
          py::arg("g1"), py::arg("g2"), py::arg("u0"), py::arg("u1"), py::arg("v0"), py::arg("v1"),
          py::arg("nu"), py::arg("nv"), py::arg("t0"), py::arg("theta") = 0.0);

    m.def("hyperplane_test",
          [](const std::string& g1, const std::string& g2, double u0, double u1, double v0,
             double v1, int nu, int nv, double tol) {
              HolPair p{parse(g1), parse(g2)};
              HyperplaneResult r = hyperplane_test(p, grid_from(u0, u1, v0, v1, nu, nv), tol);
              py::dict d;
              d["in_hyperplane"] = r.in_hyperplane;
              d["max_abs_kappa"] = r.max_abs_kappa;
              if (r.moebius) {
                  d["a"] = r.moebius->a;
                  d["b"] = r.moebius->b;
                  d["fit_residual"] = r.fit_residual;
              }
              return d;
          },
          py::arg("g1"), py::arg("g2"), py::arg("u0"), py::arg("u1"), py::arg("v0"), py::arg("v1"),
          py::arg("nu"), py::arg("nv"), py::arg("tol") = 1e-9);

    m.def("run_job",
          [](const std::string& command, const std::string& config_json, const std::string& out_dir) {
              std::string log;
              int rc = run_job(command, config_json, out_dir, &log);
              return py::make_tuple(rc, log);
          },
          py::arg("command"), py::arg("config_json"), py::arg("out_dir") = ".");
}
