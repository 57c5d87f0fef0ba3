#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "normlog/checks.hpp"
#include "normlog/errors.hpp"
#include "normlog/harness.hpp"
#include "normlog/io.hpp"
#include "normlog/linalg.hpp"
#include "normlog/logs.hpp"
#include "normlog/region.hpp"
#include "normlog/spectral.hpp"
#include "normlog/suite.hpp"
#include "normlog/version.hpp"

namespace py = pybind11;
using namespace normlog;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::dict report_dict(const CheckReport& r) {
    py::dict d;
    d["check"] = r.check_name;
    d["passed"] = r.passed;
    d["hypothesis_met"] = r.hypothesis_met;
    d["residuals"] = r.residuals;
    d["tolerances"] = r.tolerances;
    d["notes"] = r.notes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_normlog, m) {
    m.doc() = "Normal operator logarithms on complex matrices";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidMatrix>(m, "InvalidMatrix", base);
    py::register_exception<NotHermitian>(m, "NotHermitian", base);
    py::register_exception<NotNormal>(m, "NotNormal", base);
    py::register_exception<NotCommuting>(m, "NotCommuting", base);
    py::register_exception<NoConvergence>(m, "NoConvergence", base);
    py::register_exception<AmbiguousBoundary>(m, "AmbiguousBoundary", base);
    py::register_exception<SpectrumOutOfRange>(m, "SpectrumOutOfRange", base);
    py::register_exception<OutOfFoldRange>(m, "OutOfFoldRange", base);
    py::register_exception<Singular>(m, "Singular", base);
    py::register_exception<ExpNotNormal>(m, "ExpNotNormal", base);
    py::register_exception<ConstructionFailed>(m, "ConstructionFailed", base);

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("herm", &Tolerances::herm)
        .def_readwrite("norm", &Tolerances::norm)
        .def_readwrite("eig", &Tolerances::eig)
        .def_readwrite("comm", &Tolerances::comm)
        .def_readwrite("check", &Tolerances::check)
        .def_readwrite("rank", &Tolerances::rank)
        .def_readwrite("boundary", &Tolerances::boundary)
        .def_readwrite("snap", &Tolerances::snap)
        .def_readwrite("cluster", &Tolerances::cluster)
        .def_readwrite("point", &Tolerances::point)
        .def_readwrite("integer", &Tolerances::integer)
        .def_readwrite("inv", &Tolerances::inv);

    py::class_<Region>(m, "Region")
        .def_static("rect", &Region::rect, py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"),
                    py::arg("im_hi"), py::arg("re_lo_incl") = true, py::arg("re_hi_incl") = true,
                    py::arg("im_lo_incl") = true, py::arg("im_hi_incl") = true)
        .def_static("hline", &Region::hline)
        .def_static("points", &Region::points, py::arg("points"), py::arg("radius"))
        .def_static("union_of", &Region::union_of)
        .def_static("conjugate", &Region::conjugate)
        .def_static("negate", &Region::negate)
        .def_static("shift", &Region::shift)
        .def_static("plane", &Region::plane)
        .def_static("empty", &Region::empty)
        .def_static("strip", &Region::strip)
        .def_static("strip_interior", &Region::strip_interior)
        .def_static("strip_boundary", &Region::strip_boundary)
        .def("contains", [](const Region& r, Complex z, double boundary, double snap) {
            switch (r.membership(z, boundary, snap)) {
                case Membership::Inside: return std::string("inside");
                case Membership::Outside: return std::string("outside");
                case Membership::Ambiguous: break;
            }
            return std::string("ambiguous");
        }, py::arg("z"), py::arg("boundary") = 1e-9, py::arg("snap") = 1e-11);

    py::class_<SpectralCluster>(m, "SpectralCluster")
        .def_readonly("eigenvalue", &SpectralCluster::lambda)
        .def_readonly("projection", &SpectralCluster::proj)
        .def_readonly("basis", &SpectralCluster::basis)
        .def_readonly("multiplicity", &SpectralCluster::mult);

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("n", &SpectralDecomposition::n)
        .def_readonly("clusters", &SpectralDecomposition::clusters)
        .def("reconstruct", &SpectralDecomposition::reconstruct)
        .def("eigenvalues", &SpectralDecomposition::eigenvalues);

    py::class_<KurepaDecomposition>(m, "KurepaDecomposition")
        .def_readonly("n0", &KurepaDecomposition::n0)
        .def_readonly("w", &KurepaDecomposition::w)
        .def_readonly("w_eigenvalues", &KurepaDecomposition::w_eigenvalues)
        .def_readonly("reconstruction_residual", &KurepaDecomposition::reconstruction_residual)
        .def_readonly("commute_residual", &KurepaDecomposition::commute_residual)
        .def_readonly("integer_spectrum_residual", &KurepaDecomposition::integer_spectrum_residual)
        .def_readonly("diagonalizable_residual", &KurepaDecomposition::diagonalizable_residual);

    const Tolerances defaults;
    m.def("is_normal", &is_normal, py::arg("x"), py::arg("tol") = defaults);
    m.def("modulus", &modulus, py::arg("x"), py::arg("tol") = defaults);
    m.def("normal_eig", &normal_eig, py::arg("x"), py::arg("tol") = defaults);
    m.def("spectral_measure", &spectral_measure, py::arg("dec"), py::arg("omega"), py::arg("tol") = defaults);
    m.def("borel_calculus", &borel_calculus, py::arg("dec"), py::arg("f"));
    m.def("fold_scalar", &fold_scalar, py::arg("t"), py::arg("k_lo"), py::arg("k_hi"), py::arg("tol") = defaults);
    m.def("exp_normal", &exp_normal, py::arg("dec"));
    m.def("exp_general", &exp_general, py::arg("x"));
    m.def("principal_log", &principal_log, py::arg("n"), py::arg("tol") = defaults);
    m.def("branch_log", [](const SpectralDecomposition& dec, const std::map<std::size_t, int>& shifts,
                           const Tolerances& tol) { return branch_log(dec, BranchShift{shifts}, tol); },
          py::arg("dec"), py::arg("shifts"), py::arg("tol") = defaults);
    m.def("kurepa_decompose", &kurepa_decompose, py::arg("y"), py::arg("tol") = defaults);
    m.def("in_double_commutant", [](const ComplexMatrix& w, const ComplexMatrix& y, const Tolerances& tol) {
        const auto r = in_double_commutant(w, y, tol);
        return py::make_tuple(r.member, r.residual);
    }, py::arg("w"), py::arg("y"), py::arg("tol") = defaults);
    m.def("random_unitary", py::overload_cast<int, std::uint64_t>(&random_unitary), py::arg("n"), py::arg("seed"));

    m.def("check_names", &check_names);
    m.def("run_check", [](const std::string& name, const ComplexMatrix& x, const ComplexMatrix& y, int k_lo,
                          int k_hi, const Tolerances& tol) { return report_dict(run_check(name, x, y, k_lo, k_hi, tol)); },
          py::arg("name"), py::arg("x"), py::arg("y"), py::arg("k_lo") = -1, py::arg("k_hi") = 0,
          py::arg("tol") = defaults);
    m.def("make_pair", [](const std::string& family, int n, std::uint64_t seed,
                          const std::map<std::string, double>& params) {
        const auto p = make_pair(InstanceSpec{family_from_name(family), n, seed, params});
        return py::make_tuple(p.x, p.y, to_python(p.metadata));
    }, py::arg("family"), py::arg("n"), py::arg("seed"), py::arg("params") = std::map<std::string, double>{});
    m.def("run_suite", [](const py::object& config) {
        const SuiteConfig c = config.is_none() ? SuiteConfig{} : suite_config_from_json(from_python(config));
        SuiteReport report;
        {
            py::gil_scoped_release release;
            report = run_suite(c);
        }
        return to_python(nlohmann::json::parse(suite_report_to_json(report)));
    }, py::arg("config") = py::none());
}
