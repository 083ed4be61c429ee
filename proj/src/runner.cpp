#include "aip/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "aip/boundary.hpp"
#include "aip/circle.hpp"
#include "aip/errors.hpp"
#include "aip/residual.hpp"
#include "aip/sarason.hpp"

namespace aip::io {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw AipError(ErrorKind::InvalidInput, what);
}

std::vector<std::pair<const char*, double*>> tolerance_fields(Tolerances& t)
{
    return {{"interp", &t.interp},
            {"boundary_interp", &t.boundary_interp},
            {"contractivity", &t.contractivity},
            {"norm_equality", &t.norm_equality},
            {"hardy", &t.hardy},
            {"data_identity", &t.data_identity},
            {"defect_psd", &t.defect_psd},
            {"property_2prime", &t.property_2prime},
            {"rank", &t.rank},
            {"inner", &t.inner},
            {"angular", &t.angular},
            {"sarason_mass", &t.sarason_mass},
            {"theta_division", &t.theta_division},
            {"outer", &t.outer},
            {"criterion", &t.criterion},
            {"denseness", &t.denseness}};
}

std::size_t count_field(const json& j, const char* key, std::size_t fallback, std::size_t minimum)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number_integer() || j[key].get<long long>() < static_cast<long long>(minimum))
        bad(std::string("\"") + key + "\" must be an integer ≥ " + std::to_string(minimum));
    return j[key].get<std::size_t>();
}

json read_json_file(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is)
        bad("cannot read " + file.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        bad("malformed JSON in " + file.string() + ": " + e.what());
    }
}

double uniform01(std::mt19937_64& g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

CMatrix random_contraction(std::mt19937_64& g, Index rows, Index cols, double max_modulus)
{
    CMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            const double re = 2.0 * uniform01(g) - 1.0;
            const double im = 2.0 * uniform01(g) - 1.0;
            m(r, c) = Complex(re, im);
        }
    const double target = uniform01(g) * max_modulus;
    const double sigma = m.size() > 0 ? spectral_norm(m) : 0.0;
    if (sigma > 0.0)
        m *= target / sigma;
    return m;
}

class Checks {
public:
    void add(const std::string& name, double value, double tol, bool pass)
    {
        list_.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
        if (!pass)
            failures_.push_back(name);
    }
    void at_most(const std::string& name, double value, double tol)
    {
        add(name, value, tol, value <= tol);
    }
    void flag(const std::string& name, bool pass)
    {
        list_.push_back({{"name", name}, {"pass", pass}});
        if (!pass)
            failures_.push_back(name);
    }
    void error(const std::string& name, const AipError& e)
    {
        list_.push_back({{"name", name}, {"pass", false}, {"error", std::string(to_string(e.kind()))},
                         {"message", e.what()}});
        failures_.push_back(name);
    }
    const json& list() const { return list_; }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    json list_ = json::array();
    std::vector<std::string> failures_;
};

json solution_report_json(const SolutionReport& r)
{
    return {{"interp_residual", r.interp_residual},
            {"contractivity_margin", r.contractivity_margin},
            {"norm_equality_gap", r.norm_equality_gap},
            {"norm_equality_rel_gap", r.norm_equality_rel_gap},
            {"hardy_membership_residual", r.hardy_membership_residual},
            {"data_identity_residual", r.data_identity_residual},
            {"norm_squared", r.norm_squared},
            {"form_diagonal", r.form_diagonal},
            {"w_at_zero", complex_to_json(r.w_at_zero)},
            {"metadata",
             {{"normalization", r.metadata.normalization},
              {"weight_inverse", r.metadata.weight_inverse},
              {"pinv_tol", r.metadata.pinv_tol},
              {"quad_n", r.metadata.quad_n}}}};
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

void append_matrix_header(std::string& h, const std::string& prefix, const CMatrix& m)
{
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) {
            const std::string name = prefix + "_" + std::to_string(r) + std::to_string(c);
            h += "," + name + "_re," + name + "_im";
        }
}

void append_matrix_row(std::string& line, const CMatrix& m)
{
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            line += "," + fmt(m(r, c).real()) + "," + fmt(m(r, c).imag());
}

void append_nan_row(std::string& line, Index count)
{
    for (Index k = 0; k < count; ++k)
        line += ",nan,nan";
}

std::string s_grid_csv(const CoefficientMatrix& cm, const std::vector<Complex>& pts)
{
    const SBlocks shape = eval_S_blocks(cm, 0.0);
    std::string out = "re_z,im_z";
    append_matrix_header(out, "s0", shape.s0);
    append_matrix_header(out, "s1", shape.s1);
    append_matrix_header(out, "s2", shape.s2);
    append_matrix_header(out, "s", shape.s);
    out += "\n";
    for (Complex z : pts) {
        const SBlocks b = eval_S_blocks(cm, z);
        std::string line = fmt(z.real()) + "," + fmt(z.imag());
        append_matrix_row(line, b.s0);
        append_matrix_row(line, b.s1);
        append_matrix_row(line, b.s2);
        append_matrix_row(line, b.s);
        out += line + "\n";
    }
    return out;
}

std::string w_grid_csv(const CoefficientMatrix& cm,
                       const std::vector<std::pair<json, SchurParameter>>& params,
                       const std::vector<Complex>& pts)
{
    const CMatrix shape = CMatrix::Zero(cm.dim_e2, cm.dim_e1);
    std::string out = "re_z,im_z";
    for (std::size_t k = 0; k < params.size(); ++k)
        append_matrix_header(out, "w" + std::to_string(k), shape);
    out += "\n";
    for (Complex z : pts) {
        std::string line = fmt(z.real()) + "," + fmt(z.imag());
        for (const auto& [spec, om] : params) {
            try {
                append_matrix_row(line, lft_solution(cm, om, z));
            } catch (const AipError&) {
                append_nan_row(line, shape.size());
            }
        }
        out += line + "\n";
    }
    return out;
}

bool has(const std::vector<std::string>& v, const char* name)
{
    return std::find(v.begin(), v.end(), name) != v.end();
}

} // namespace

json Tolerances::to_json() const
{
    Tolerances copy = *this;
    json j = json::object();
    for (const auto& [name, ptr] : tolerance_fields(copy))
        j[name] = *ptr;
    return j;
}

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir)
{
    if (!j.is_object())
        bad("config must be a JSON object");
    RunConfig cfg;
    if (!j.contains("problem"))
        bad("config is missing \"problem\"");
    if (j["problem"].is_string()) {
        std::filesystem::path file = j["problem"].get<std::string>();
        if (file.is_relative())
            file = base_dir / file;
        cfg.problem = read_json_file(file);
    } else {
        cfg.problem = j["problem"];
    }

    if (j.contains("parameters")) {
        if (!j["parameters"].is_array())
            bad("\"parameters\" must be an array");
        for (const json& p : j["parameters"])
            cfg.parameters.push_back(p);
    }
    if (j.contains("analyses")) {
        if (!j["analyses"].is_array())
            bad("\"analyses\" must be an array of names");
        cfg.analyses.clear();
        for (const json& a : j["analyses"]) {
            if (!a.is_string() || !has(kAnalyses, a.get<std::string>().c_str()))
                bad("unknown analysis " + a.dump());
            if (!has(cfg.analyses, a.get<std::string>().c_str()))
                cfg.analyses.push_back(a.get<std::string>());
        }
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object())
            bad("\"grid\" must be an object");
        cfg.grid.disk_points = count_field(g, "disk_points", cfg.grid.disk_points, 16);
        cfg.grid.circle_points = count_field(g, "circle_points", cfg.grid.circle_points, 16);
        if (g.contains("radius")) {
            if (!g["radius"].is_number())
                bad("grid radius must be a number");
            cfg.grid.radius = g["radius"].get<double>();
        }
        if (!(cfg.grid.radius > 0.0 && cfg.grid.radius < 1.0))
            bad("grid radius must lie in (0, 1)");
        cfg.grid.write_csv = g.value("write_csv", true);
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object())
            bad("\"tolerances\" must be an object");
        auto fields = tolerance_fields(cfg.tol);
        for (auto it = t.begin(); it != t.end(); ++it) {
            auto f = std::find_if(fields.begin(), fields.end(),
                                  [&](const auto& e) { return it.key() == e.first; });
            if (f == fields.end())
                bad("unknown tolerance \"" + it.key() + "\"");
            if (!it.value().is_number() || !(it.value().get<double>() >= 0.0))
                bad("tolerance \"" + it.key() + "\" must be a non-negative number");
            *f->second = it.value().get<double>();
        }
    }
    cfg.quad_n = count_field(j, "quad_n", cfg.quad_n, 256);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            bad("\"seed\" must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output")) {
        if (!j["output"].is_string())
            bad("\"output\" must be a path string");
        std::filesystem::path out = j["output"].get<std::string>();
        cfg.output = out.is_relative() ? base_dir / out : out;
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file)
{
    const std::filesystem::path base = file.has_parent_path() ? file.parent_path() : ".";
    return parse_config(read_json_file(file), base);
}

std::vector<std::pair<json, SchurParameter>> make_parameters(const std::vector<json>& specs,
                                                             const CoefficientMatrix& cm,
                                                             std::uint64_t seed)
{
    const Index n1 = cm.dim_n1;
    const Index n2 = cm.dim_n2;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<json, SchurParameter>> out;
    const std::vector<json> defaults{json{{"kind", "zero"}}};
    for (const json& spec : specs.empty() ? defaults : specs) {
        if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
            bad("each parameter needs a \"kind\"");
        const std::string kind = spec["kind"].get<std::string>();
        SchurParameter om;
        if (kind == "zero") {
            om = SchurParameter::zero(n2, n1);
        } else if (kind == "constant") {
            if (!spec.contains("value"))
                bad("constant parameter needs \"value\"");
            const json& v = spec["value"];
            const bool scalar = v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number());
            om = SchurParameter::constant(scalar ? CMatrix::Constant(1, 1, complex_from_json(v))
                                                 : matrix_from_json(v));
        } else if (kind == "blaschke") {
            if (!spec.contains("a"))
                bad("blaschke parameter needs \"a\"");
            om = SchurParameter::blaschke_factor(complex_from_json(spec["a"]),
                                                 spec.contains("phase") ? complex_from_json(spec["phase"])
                                                                        : Complex(1.0));
        } else if (kind == "realized") {
            for (const char* key : {"A", "B", "C", "D"})
                if (!spec.contains(key))
                    bad(std::string("realized parameter needs \"") + key + "\"");
            om = SchurParameter::realized(UnitaryColligation::from_blocks(
                matrix_from_json(spec["A"]), matrix_from_json(spec["B"]), matrix_from_json(spec["C"]),
                matrix_from_json(spec["D"])));
        } else if (kind == "critical") {
            // ω ≡ conj(s(t0)), the constant that makes the residual part non-trivial.
            if (n1 != 1 || n2 != 1)
                bad("the critical parameter needs dim N1 = dim N2 = 1");
            if (!spec.contains("t0"))
                bad("the critical parameter needs \"t0\"");
            const Complex s_t0 = eval_S_blocks(cm, complex_from_json(spec["t0"])).s(0, 0);
            om = SchurParameter::constant(CMatrix::Constant(1, 1, std::conj(s_t0) / std::max(1.0, std::abs(s_t0))));
        } else if (kind == "random") {
            const std::size_t count = count_field(spec, "count", 10, 1);
            const double max_mod = spec.value("max_modulus", 0.9);
            if (!(max_mod >= 0.0 && max_mod <= 1.0))
                bad("max_modulus must lie in [0, 1]");
            for (std::size_t k = 0; k < count; ++k) {
                const CMatrix v = random_contraction(rng, n2, n1, max_mod);
                out.emplace_back(json{{"kind", "constant"}, {"value", matrix_to_json(v)}, {"origin", "random"}},
                                 SchurParameter::constant(v));
            }
            continue;
        } else {
            bad("unknown parameter kind \"" + kind + "\"");
        }
        if (om.rows() != n2 || om.cols() != n1)
            throw AipError(ErrorKind::DimensionMismatch,
                           "parameter \"" + kind + "\" must be " + std::to_string(n2) + "x"
                               + std::to_string(n1) + " (N2 x N1)");
        out.emplace_back(spec, std::move(om));
    }
    return out;
}

json error_report(const std::string& kind, const std::string& message)
{
    return {{"status", "error"},
            {"exit_code", 2},
            {"error", {{"kind", kind}, {"message", message}}}};
}

RunOutcome execute(const RunConfig& cfg)
{
    RunOutcome out;
    AipProblem p;
    CoefficientMatrix cm;
    std::vector<std::pair<json, SchurParameter>> params;
    try {
        p = problem_from_json(cfg.problem);
        cm = build_coefficient_matrix(p);
        params = make_parameters(cfg.parameters, cm, cfg.seed);
        if (has(cfg.analyses, "boundary") && p.boundary() == nullptr)
            bad("the boundary analysis needs a boundary problem");
        if (has(cfg.analyses, "sarason") && p.sarason() == nullptr)
            bad("the sarason analysis needs a Sarason problem");
    } catch (const AipError& e) {
        out.exit_code = 2;
        out.report = error_report(std::string(to_string(e.kind())), e.what());
        if (e.value())
            out.report["error"]["value"] = *e.value();
        return out;
    } catch (const json::exception& e) {
        out.exit_code = 2;
        out.report = error_report("InvalidInput", e.what());
        return out;
    }

    const std::string type = problem_type(p);
    const bool special = type != "raw";
    Checks checks;
    json& rep = out.report;
    rep["problem"] = {{"type", type},
                      {"dim_x", p.dim_x()},
                      {"dim_e1", p.dim_e1()},
                      {"dim_e2", p.dim_e2()},
                      {"identity_residual", check_fundamental_identity(p)},
                      {"input", cfg.problem}};
    rep["dims"] = {{"h0", cm.dim_h0()}, {"n1", cm.dim_n1}, {"n2", cm.dim_n2}, {"d_v", cm.isometry.d_v.dim()}};
    rep["normalization"] = {{"coefficient_matrix", cm.normalization},
                            {"weight_inverse", "Moore-Penrose pseudo-inverse"},
                            {"pinv_tol", kDefaultTol},
                            {"quad_n", cfg.quad_n}};
    rep["colligation"] = {{"unitarity_defect", unitarity_defect(cm.colligation.full())},
                          {"isometry_fit_residual", cm.isometry.fit_residual},
                          {"s_at_zero", cm.split(cm.colligation.d()).s.norm()}};
    rep["config"] = {{"analyses", cfg.analyses},
                     {"grid",
                      {{"disk_points", cfg.grid.disk_points},
                       {"circle_points", cfg.grid.circle_points},
                       {"radius", cfg.grid.radius}}},
                     {"tolerances", cfg.tol.to_json()},
                     {"seed", cfg.seed}};

    const Tolerances& tol = cfg.tol;
    const bool scalar_n = cm.dim_n1 == 1 && cm.dim_n2 == 1;
    json entries = json::array();
    for (std::size_t k = 0; k < params.size(); ++k) {
        const auto& [spec, om] = params[k];
        const std::string tag = "omega[" + std::to_string(k) + "].";
        json e = {{"index", k}, {"spec", spec}};

        if (has(cfg.analyses, "solve")) {
            try {
                e["solve"] = {{"w_at_zero", matrix_to_json(lft_solution(cm, om, 0.0))}};
            } catch (const AipError& err) {
                checks.error(tag + "solve", err);
            }
        }

        double gap_rel = -1.0;
        if (has(cfg.analyses, "verify")) {
            try {
                VerifyOptions vo;
                vo.quad_n = cfg.quad_n;
                vo.disk_points = cfg.grid.disk_points;
                vo.disk_radius = cfg.grid.radius;
                const SolutionReport r = verify_solution(p, cm, om, vo);
                e["verify"] = solution_report_json(r);
                gap_rel = r.norm_equality_rel_gap;
                const double interp_tol = type == "boundary" ? tol.boundary_interp
                                          : special           ? tol.interp
                                                              : tol.data_identity;
                checks.at_most(tag + "interp_residual", r.interp_residual, interp_tol);
                checks.at_most(tag + "contractivity_margin", r.contractivity_margin, tol.contractivity);
                checks.at_most(tag + "hardy_membership_residual", r.hardy_membership_residual, tol.hardy);
                checks.at_most(tag + "data_identity_residual", r.data_identity_residual, tol.data_identity);
                if (type == "np" || type == "sarason") {
                    checks.at_most(tag + "norm_equality_rel_gap", r.norm_equality_rel_gap, tol.norm_equality);
                } else {
                    double excess = 0.0;
                    for (std::size_t j = 0; j < r.norm_squared.size(); ++j)
                        excess = std::max(excess, (r.norm_squared[j] - r.form_diagonal[j])
                                                      / (1.0 + r.form_diagonal[j]));
                    checks.at_most(tag + "norm_inequality_excess", excess, tol.norm_equality);
                }
            } catch (const AipError& err) {
                checks.error(tag + "verify", err);
            }
        }

        if (has(cfg.analyses, "boundary")) {
            const BoundaryData& bd = *p.boundary();
            try {
                const AngularDerivativeEstimate est
                    = estimate_angular_derivative(scalar_solution(cm, om), bd.t0, bd.w0);
                json b = {{"D_liminf", est.d_liminf},
                          {"D_integral", est.d_integral},
                          {"w0_limit", complex_to_json(est.w0_limit)},
                          {"converged", est.converged}};
                checks.at_most(tag + "angular_derivative_bound", est.d_liminf - bd.bound, 1e-3);
                checks.at_most(tag + "angular_estimators_agree",
                               std::isfinite(est.d_integral) ? std::abs(est.d_liminf - est.d_integral)
                                                             : std::numeric_limits<double>::infinity(),
                               tol.angular);
                if (scalar_n)
                    b["residual_nontrivial"] = boundary_residual_detect(cm, om, bd.t0);
                else
                    b["residual_nontrivial"] = nullptr;
                e["boundary"] = b;
            } catch (const AipError& err) {
                checks.error(tag + "boundary", err);
            }
        }

        if (has(cfg.analyses, "residual")) {
            try {
                json r = json::object();
                if (cm.dim_n1 + cm.dim_n2 == 0) {
                    r["applicable"] = false;
                } else {
                    double worst_norm = 0.0;
                    double min_eig = 0.0;
                    json points = json::array();
                    for (Complex z : {Complex(0.0, 0.0), Complex(0.3, 0.2), Complex(0.0, -0.4)}) {
                        const SpectralEval se = eval_spectral(cm, om, z, cfg.quad_n);
                        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (se.defect + se.defect.adjoint()),
                                                                  Eigen::EigenvaluesOnly);
                        const double lo = es.eigenvalues().minCoeff();
                        min_eig = std::min(min_eig, lo);
                        worst_norm = std::max(worst_norm, se.defect.norm());
                        points.push_back({{"z", complex_to_json(z)},
                                          {"defect_norm", se.defect.norm()},
                                          {"defect_min_eigenvalue", lo}});
                    }
                    r = {{"applicable", true},
                         {"points", points},
                         {"max_defect_norm", worst_norm},
                         {"residual_trivial", worst_norm <= 2e-3}};
                    if (gap_rel >= 0.0)
                        r["consistent_with_norm_gap"] = (worst_norm <= 2e-3) == (gap_rel <= tol.norm_equality);
                    checks.at_most(tag + "defect_psd", -min_eig, tol.defect_psd);
                }
                e["residual"] = r;
            } catch (const AipError& err) {
                checks.error(tag + "residual", err);
            }
        }

        if (has(cfg.analyses, "properties") && scalar_n) {
            try {
                const SingularMassGaps g = check_property_1prime(cm, om, cfg.quad_n);
                e["property_1prime"] = {{"ratio1", g.ratio1}, {"ratio2", g.ratio2},
                                        {"absolutely_continuous", std::max(g.ratio1, g.ratio2) <= 5e-3}};
            } catch (const AipError& err) {
                checks.error(tag + "property_1prime", err);
            }
        }
        entries.push_back(e);
    }
    rep["parameters"] = entries;

    if (has(cfg.analyses, "properties")) {
        const std::vector<Complex> samples = circle_nodes(cfg.grid.circle_points);
        try {
            const double p2 = check_property_2prime(cm, samples);
            const RankIdentity ri = check_property_2doubleprime(cm, samples, tol.rank);
            json pr = {{"property_2prime_residual", p2},
                       {"property_2doubleprime",
                        {{"holds", ri.holds},
                         {"failures", ri.failures},
                         {"lhs_rank_max", ri.lhs_rank_max},
                         {"rhs_rank_min", ri.rhs_rank_min}}}};
            const bool complete = cm.dim_n1 == cm.dim_e1;
            pr["completely_indeterminate"] = complete;
            if (special) {
                checks.at_most("property_2prime", p2, tol.property_2prime);
                checks.flag("property_2doubleprime", ri.holds);
            }
            if (complete) {
                const double d = inner_defect(cm, samples);
                pr["inner_defect"] = d;
                if (special)
                    checks.at_most("coefficient_matrix_inner", d, tol.inner);
            }
            rep["properties"] = pr;
        } catch (const AipError& err) {
            checks.error("properties", err);
        }
    }

    if (has(cfg.analyses, "sarason")) {
        const SarasonData& sd = *p.sarason();
        json s = json::object();
        if (cm.dim_e1 != 1 || cm.dim_e2 != 1 || !scalar_n) {
            s["applicable"] = false;
            s["reason"] = "needs a scalar indeterminate problem (E1 = E2 = N1 = N2 = 1)";
        } else {
            try {
                const std::size_t grid_n = std::max<std::size_t>(cfg.grid.circle_points, 1024);
                double mass = 0.0, g0 = 0.0, model = 0.0, excess = 0.0;
                for (Index j = 0; j < p.dim_x(); ++j) {
                    CVector x = CVector::Zero(p.dim_x());
                    x(j) = 1.0;
                    const DenseSetSample ds = eval_FS(cm, p, x, grid_n);
                    mass = std::max(mass, ds.s2_analytic_mass);
                    g0 = std::max(g0, ds.g0_mismatch);
                    model = std::max(model, ds.model_mismatch);
                    excess = std::max(excess, ds.hs_norm_sq - std::real(p.D(j, j)));
                }
                const InnerFactor tf = factor_s2_through_theta(cm, sd.zeros, grid_n);
                std::vector<Complex> s1(grid_n);
                const std::vector<Complex> nodes = circle_nodes(grid_n);
                for (std::size_t q = 0; q < grid_n; ++q)
                    s1[q] = eval_S_blocks(cm, nodes[q]).s1(0, 0);
                const double outer_s1 = check_outer(s1, eval_S_blocks(cm, 0.0).s1(0, 0));
                const double outer_st2 = check_outer(tf.quotient, circle_mean(tf.quotient));
                const IndeterminacyCriterion crit = check_indeterminacy_criterion(cm, p, cfg.quad_n);
                const std::vector<double> dense = denseness_residuals(cm, p, 3, cfg.quad_n);
                const double dense_max = *std::max_element(dense.begin(), dense.end());
                s = {{"applicable", true},
                     {"s2_conj_x_analytic_mass", mass},
                     {"fourier_representation_mismatch", g0},
                     {"model_form_mismatch", model},
                     {"norm_excess_over_form", excess},
                     {"theta_division_residual", tf.residual()},
                     {"outer_gap_s1", outer_s1},
                     {"star_outer_gap_stilde2", outer_st2},
                     {"criterion_infimum", crit.infimum},
                     {"normalization",
                      {{"alpha", complex_to_json(crit.normalization.alpha)},
                       {"beta", complex_to_json(crit.normalization.beta)},
                       {"s1_at_0", crit.normalization.s1_at_0},
                       {"stilde2_at_0", crit.normalization.stilde2_at_0},
                       {"s1_minus_stilde2", crit.normalization.outer_mismatch},
                       {"ok", crit.normalization.ok}}},
                     {"denseness_residuals", dense}};
                checks.at_most("sarason.s2_conj_x_analytic_mass", mass, tol.sarason_mass);
                checks.at_most("sarason.fourier_representation_mismatch", std::max(g0, model), 1e-8);
                checks.at_most("sarason.norm_excess_over_form", excess, 1e-3);
                checks.at_most("sarason.theta_division_residual", tf.residual(), tol.theta_division);
                checks.at_most("sarason.outer_gap_s1", outer_s1, tol.outer);
                checks.at_most("sarason.star_outer_gap_stilde2", outer_st2, tol.outer);
                checks.at_most("sarason.criterion_infimum", crit.infimum, tol.criterion);
                checks.at_most("sarason.denseness_residual", dense_max, tol.denseness);
            } catch (const AipError& err) {
                checks.error("sarason", err);
            }
        }
        rep["sarason"] = s;
    }

    if (has(cfg.analyses, "solve") && cfg.grid.write_csv) {
        const std::vector<Complex> pts = disk_points(cfg.grid.disk_points, cfg.grid.radius);
        try {
            out.s_grid_csv = s_grid_csv(cm, pts);
            out.w_grid_csv = w_grid_csv(cm, params, pts);
        } catch (const AipError& err) {
            checks.error("grid", err);
        }
    }

    rep["checks"] = checks.list();
    rep["failures"] = checks.failures();
    out.exit_code = checks.failures().empty() ? 0 : 1;
    rep["status"] = out.exit_code == 0 ? "pass" : "fail";
    rep["exit_code"] = out.exit_code;
    return out;
}

RunOutcome run(const RunConfig& cfg)
{
    RunOutcome out = execute(cfg);
    std::filesystem::create_directories(cfg.output);
    write_atomic(cfg.output / "report.json", dump_stable(out.report));
    if (!out.s_grid_csv.empty())
        write_atomic(cfg.output / "S_grid.csv", out.s_grid_csv);
    if (!out.w_grid_csv.empty())
        write_atomic(cfg.output / "w_grid.csv", out.w_grid_csv);
    return out;
}

} // namespace aip::io
