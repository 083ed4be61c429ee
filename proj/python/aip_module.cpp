#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "aip/boundary.hpp"
#include "aip/circle.hpp"
#include "aip/errors.hpp"
#include "aip/residual.hpp"
#include "aip/runner.hpp"
#include "aip/sarason.hpp"

namespace py = pybind11;
using namespace aip;

namespace {

py::object json_to_py(const io::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

io::json py_to_json(const py::object& o)
{
    return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::dict report_to_dict(const SolutionReport& r)
{
    py::dict d;
    d["interp_residual"] = r.interp_residual;
    d["contractivity_margin"] = r.contractivity_margin;
    d["norm_equality_gap"] = r.norm_equality_gap;
    d["norm_equality_rel_gap"] = r.norm_equality_rel_gap;
    d["hardy_membership_residual"] = r.hardy_membership_residual;
    d["data_identity_residual"] = r.data_identity_residual;
    d["norm_squared"] = r.norm_squared;
    d["form_diagonal"] = r.form_diagonal;
    d["w_at_zero"] = r.w_at_zero;
    d["normalization"] = r.metadata.normalization;
    d["quad_n"] = r.metadata.quad_n;
    return d;
}

} // namespace

PYBIND11_MODULE(_aip, m)
{
    m.doc() = "Abstract interpolation problems: coefficient matrices, solutions and diagnostics";

    static py::handle error = py::exception<AipError>(m, "AipError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const AipError& e) {
            py::object exc = error(e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            exc.attr("value") = e.value() ? py::cast(*e.value()) : py::none();
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<AipProblem>(m, "Problem")
        .def_readonly("D", &AipProblem::D)
        .def_readonly("T1", &AipProblem::T1)
        .def_readonly("T2", &AipProblem::T2)
        .def_readonly("M1", &AipProblem::M1)
        .def_readonly("M2", &AipProblem::M2)
        .def_readonly("special_case", &AipProblem::special_case)
        .def_property_readonly("kind", [](const AipProblem& p) { return io::problem_type(p); })
        .def("identity_residual", &check_fundamental_identity);

    m.def("make_problem", &make_problem, py::arg("D"), py::arg("T1"), py::arg("T2"), py::arg("M1"),
          py::arg("M2"), py::arg("special_case") = false);
    m.def("build_np", [](std::vector<Complex> nodes, std::vector<Complex> values) {
        return build_np({std::move(nodes), std::move(values)});
    }, py::arg("nodes"), py::arg("values"));
    m.def("build_boundary", [](Complex t0, Complex w0, double bound) {
        return build_boundary({t0, w0, bound});
    }, py::arg("t0"), py::arg("w0"), py::arg("bound"));
    m.def("build_sarason", [](std::vector<Complex> zeros, CMatrix wstar) {
        return build_sarason({std::move(zeros), std::move(wstar)});
    }, py::arg("zeros"), py::arg("wstar"));
    m.def("build_sarason_from_np", [](std::vector<Complex> nodes, std::vector<Complex> values) {
        return build_sarason(sarason_from_np({std::move(nodes), std::move(values)}));
    }, py::arg("nodes"), py::arg("values"));

    py::class_<CoefficientMatrix>(m, "CoefficientMatrix")
        .def_readonly("dim_e1", &CoefficientMatrix::dim_e1)
        .def_readonly("dim_e2", &CoefficientMatrix::dim_e2)
        .def_readonly("dim_n1", &CoefficientMatrix::dim_n1)
        .def_readonly("dim_n2", &CoefficientMatrix::dim_n2)
        .def_readonly("normalization", &CoefficientMatrix::normalization)
        .def_property_readonly("dim_h0", &CoefficientMatrix::dim_h0)
        .def_property_readonly("colligation", [](const CoefficientMatrix& cm) { return cm.colligation.full(); })
        .def("__call__", &eval_S, py::arg("z"))
        .def("blocks", [](const CoefficientMatrix& cm, Complex z) {
            const SBlocks b = eval_S_blocks(cm, z);
            py::dict d;
            d["s0"] = b.s0;
            d["s1"] = b.s1;
            d["s2"] = b.s2;
            d["s"] = b.s;
            return d;
        }, py::arg("z"));

    m.def("coefficient_matrix", [](const AipProblem& p, double tol) { return build_coefficient_matrix(p, tol); },
          py::arg("problem"), py::arg("tol") = kDefaultTol);

    py::class_<SchurParameter>(m, "SchurParameter")
        .def_static("constant", &SchurParameter::constant, py::arg("value"))
        .def_static("zero", &SchurParameter::zero, py::arg("dim_n2"), py::arg("dim_n1"))
        .def_static("blaschke_factor", &SchurParameter::blaschke_factor, py::arg("a"), py::arg("phase") = Complex(1.0))
        .def_static("realized", [](const CMatrix& full, Index dim_state) {
            return SchurParameter::realized(
                UnitaryColligation::from_matrix(full, dim_state, full.cols() - dim_state));
        }, py::arg("colligation"), py::arg("dim_state"))
        .def("__call__", &SchurParameter::operator(), py::arg("z"));

    m.def("solution", &lft_solution, py::arg("cm"), py::arg("omega"), py::arg("z"));
    m.def("verify", [](const AipProblem& p, const CoefficientMatrix& cm, const SchurParameter& om,
                       std::size_t quad_n) {
        VerifyOptions vo;
        vo.quad_n = quad_n;
        return report_to_dict(verify_solution(p, cm, om, vo));
    }, py::arg("problem"), py::arg("cm"), py::arg("omega"), py::arg("quad_n") = 4096);

    m.def("circle_nodes", &circle_nodes, py::arg("n"));
    m.def("defect", &eval_defect, py::arg("cm"), py::arg("omega"), py::arg("z"), py::arg("quad_n") = 4096,
          py::arg("pinv_tol") = 1e-10);
    m.def("property_2prime", [](const CoefficientMatrix& cm, std::size_t n) {
        return check_property_2prime(cm, circle_nodes(n));
    }, py::arg("cm"), py::arg("samples") = 512);
    m.def("inner_defect", [](const CoefficientMatrix& cm, std::size_t n) {
        return inner_defect(cm, circle_nodes(n));
    }, py::arg("cm"), py::arg("samples") = 512);
    m.def("boundary_residual_detect", &boundary_residual_detect, py::arg("cm"), py::arg("omega"), py::arg("t0"));
    m.def("angular_derivative", [](const ScalarFunction& w, Complex t0, Complex w0) {
        const AngularDerivativeEstimate e = estimate_angular_derivative(w, t0, w0);
        py::dict d;
        d["d_liminf"] = e.d_liminf;
        d["d_integral"] = e.d_integral;
        d["w0_limit"] = e.w0_limit;
        d["converged"] = e.converged;
        return d;
    }, py::arg("w"), py::arg("t0"), py::arg("w0"));
    m.def("sarason_criterion", [](const CoefficientMatrix& cm, const AipProblem& p, std::size_t quad_n) {
        return check_indeterminacy_criterion(cm, p, quad_n).infimum;
    }, py::arg("cm"), py::arg("problem"), py::arg("quad_n") = 2048);

    m.def("run_config", [](const py::object& config, const std::filesystem::path& base_dir, bool write) -> py::tuple {
        io::RunConfig cfg;
        try {
            cfg = io::parse_config(py_to_json(config), base_dir);
        } catch (const AipError& e) {
            return py::make_tuple(2, json_to_py(io::error_report(std::string(to_string(e.kind())), e.what())));
        }
        const io::RunOutcome out = write ? io::run(cfg) : io::execute(cfg);
        return py::make_tuple(out.exit_code, json_to_py(out.report));
    }, py::arg("config"), py::arg("base_dir") = std::filesystem::path("."), py::arg("write") = false,
       "Runs a config given as a dict; returns (exit_code, report).");
}
