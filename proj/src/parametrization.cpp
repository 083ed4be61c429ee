#include "aip/parametrization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aip/circle.hpp"
#include "aip/errors.hpp"

namespace aip {

namespace {

constexpr double kMaxInverseNorm = 1e12;

CMatrix guarded_inverse(const CMatrix& m, const char* what)
{
    const Index n = m.rows();
    if (n == 0)
        return CMatrix(0, 0);
    Eigen::JacobiSVD<CMatrix> svd(m);
    const double smin = svd.singularValues()(n - 1);
    if (!(smin > 1.0 / kMaxInverseNorm))
        throw AipError(ErrorKind::SingularResolvent, std::string(what) + " is not invertible",
                       smin);
    return m.partialPivLu().inverse();
}

double relative_wrong_mass(std::span<const Complex> samples, bool analytic)
{
    FourierSeries fs(samples);
    const double total = fs.total_mass();
    if (total < 1e-28)
        return 0.0;
    return (analytic ? fs.negative_mass() : fs.nonnegative_mass()) / total;
}

} // namespace

SchurParameter SchurParameter::constant(CMatrix value)
{
    require_finite(value, "Schur parameter");
    if (spectral_norm(value) > 1.0 + 1e-12)
        throw AipError(ErrorKind::InvalidInput, "constant Schur parameter must be a contraction",
                       spectral_norm(value));
    SchurParameter om;
    om.kind_ = Kind::Constant;
    om.value_ = std::move(value);
    return om;
}

SchurParameter SchurParameter::zero(Index dim_n2, Index dim_n1)
{
    return constant(CMatrix::Zero(dim_n2, dim_n1));
}

SchurParameter SchurParameter::realized(UnitaryColligation col)
{
    SchurParameter om;
    om.kind_ = Kind::Realized;
    om.realization_ = std::move(col);
    return om;
}

SchurParameter SchurParameter::blaschke_factor(Complex a, Complex phase)
{
    if (!(std::abs(a) < 1.0) || std::abs(std::abs(phase) - 1.0) > 1e-12)
        throw AipError(ErrorKind::InvalidInput, "Blaschke factor needs |a| < 1 and |phase| = 1");
    const double c = std::sqrt(1.0 - std::norm(a));
    return realized(UnitaryColligation::from_blocks(
        CMatrix::Constant(1, 1, std::conj(a)), CMatrix::Constant(1, 1, c),
        CMatrix::Constant(1, 1, phase * c), CMatrix::Constant(1, 1, -phase * a)));
}

Index SchurParameter::rows() const
{
    return kind_ == Kind::Constant ? value_.rows() : realization_.dim_out();
}

Index SchurParameter::cols() const
{
    return kind_ == Kind::Constant ? value_.cols() : realization_.dim_in();
}

CMatrix SchurParameter::operator()(Complex z) const
{
    return kind_ == Kind::Constant ? value_ : eval_char_fn(realization_, z);
}

LftPoint eval_lft_point(const CoefficientMatrix& cm, const SchurParameter& om, Complex z)
{
    if (om.rows() != cm.dim_n2 || om.cols() != cm.dim_n1)
        throw AipError(ErrorKind::DimensionMismatch,
                       "Schur parameter must map N1 (dim " + std::to_string(cm.dim_n1)
                           + ") to N2 (dim " + std::to_string(cm.dim_n2) + ")");
    LftPoint pt;
    pt.s = eval_S_blocks(cm, z);
    pt.omega = om(z);
    const CMatrix i1 = CMatrix::Identity(cm.dim_n1, cm.dim_n1);
    const CMatrix i2 = CMatrix::Identity(cm.dim_n2, cm.dim_n2);
    pt.pp.phi_circ = guarded_inverse(i1 - pt.s.s * pt.omega, "I - s*omega");
    pt.pp.psi_circ = guarded_inverse(i2 - pt.omega * pt.s.s, "I - omega*s");
    pt.pp.phi = pt.pp.phi_circ * pt.s.s1;
    pt.pp.psi = pt.s.s2 * pt.pp.psi_circ;
    pt.w = pt.s.s0 + pt.s.s2 * pt.omega * pt.pp.phi;
    return pt;
}

CMatrix lft_solution(const CoefficientMatrix& cm, const SchurParameter& om, Complex z)
{
    return eval_lft_point(cm, om, z).w;
}

PhiPsi phi_psi(const CoefficientMatrix& cm, const SchurParameter& om, Complex z)
{
    return eval_lft_point(cm, om, z).pp;
}

namespace {

FValue apply_F(const CoefficientMatrix& cm, const LftPoint& pt, const FourierPair& g0)
{
    FValue out;
    out.plus = g0.plus.topRows(cm.dim_e2)
               + pt.pp.psi * pt.omega * g0.plus.bottomRows(cm.dim_n1);
    out.minus = g0.minus.topRows(cm.dim_e1)
                + pt.pp.phi.adjoint() * pt.omega.adjoint() * g0.minus.bottomRows(cm.dim_n2);
    return out;
}

} // namespace

FValue eval_F(const CoefficientMatrix& cm, const SchurParameter& om, const CMatrix& x, Complex t)
{
    if (x.rows() != cm.gram.embed.cols())
        throw AipError(ErrorKind::DimensionMismatch, "x must be a vector of the data space");
    const LftPoint pt = eval_lft_point(cm, om, t);
    return apply_F(cm, pt, eval_fourier_G0(cm, cm.gram.embed * x, t));
}

CMatrix range_weight(const CMatrix& w)
{
    const Index e2 = w.rows();
    const Index e1 = w.cols();
    CMatrix out(e2 + e1, e2 + e1);
    out << CMatrix::Identity(e2, e2), w, w.adjoint(), CMatrix::Identity(e1, e1);
    return out;
}

double range_norm_sq(const CMatrix& weight_pinv, const CVector& f)
{
    return std::real(f.dot(weight_pinv * f));
}

CMatrix radial_limit(const CoefficientMatrix& cm, const SchurParameter& om, Complex t0, double step)
{
    const CMatrix w1 = lft_solution(cm, om, (1.0 - step) * t0);
    const CMatrix w2 = lft_solution(cm, om, (1.0 - 2.0 * step) * t0);
    return 2.0 * w1 - w2;
}

SolutionReport verify_solution(const AipProblem& p, const CoefficientMatrix& cm,
                               const SchurParameter& om, const VerifyOptions& opts)
{
    if (opts.quad_n < 256)
        throw AipError(ErrorKind::PreconditionViolation, "quadrature needs at least 256 nodes");
    SolutionReport rep;
    rep.metadata.normalization = cm.normalization;
    rep.metadata.pinv_tol = opts.pinv_tol;
    rep.metadata.quad_n = opts.quad_n;
    const Index n = p.dim_x();
    const Index e1 = p.dim_e1();
    const Index e2 = p.dim_e2();
    const CMatrix basis = CMatrix::Identity(n, n);
    rep.w_at_zero = e1 > 0 && e2 > 0 ? lft_solution(cm, om, 0.0)(0, 0) : Complex(0.0);

    // Samples of F e_j on the quadrature nodes, component by component.
    const std::vector<Complex> nodes = circle_nodes(opts.quad_n);
    const auto nq = nodes.size();
    std::vector<std::vector<Complex>> plus(static_cast<std::size_t>(e2 * n), std::vector<Complex>(nq));
    std::vector<std::vector<Complex>> minus(static_cast<std::size_t>(e1 * n), std::vector<Complex>(nq));
    std::vector<std::vector<Complex>> w_samples(static_cast<std::size_t>(e2 * e1), std::vector<Complex>(nq));
    std::vector<double> norm_sq(static_cast<std::size_t>(n), 0.0);
    const CMatrix h0 = cm.gram.embed * basis;
    for (std::size_t q = 0; q < nq; ++q) {
        const LftPoint pt = eval_lft_point(cm, om, nodes[q]);
        const FValue f = apply_F(cm, pt, eval_fourier_G0(cm, h0, nodes[q]));
        const CMatrix wpinv = pinv(range_weight(pt.w), opts.pinv_tol);
        for (Index j = 0; j < n; ++j) {
            CVector fj(e2 + e1);
            fj << f.plus.col(j), f.minus.col(j);
            norm_sq[static_cast<std::size_t>(j)] += range_norm_sq(wpinv, fj);
            for (Index a = 0; a < e2; ++a)
                plus[static_cast<std::size_t>(j * e2 + a)][q] = f.plus(a, j);
            for (Index a = 0; a < e1; ++a)
                minus[static_cast<std::size_t>(j * e1 + a)][q] = f.minus(a, j);
        }
        for (Index a = 0; a < e2; ++a)
            for (Index b = 0; b < e1; ++b)
                w_samples[static_cast<std::size_t>(a * e1 + b)][q] = pt.w(a, b);
    }

    // (c) norm equality
    for (Index j = 0; j < n; ++j) {
        const double ns = norm_sq[static_cast<std::size_t>(j)] / static_cast<double>(nq);
        const double dxx = std::real(p.D(j, j));
        rep.norm_squared.push_back(ns);
        rep.form_diagonal.push_back(dxx);
        const double gap = std::abs(ns - dxx);
        rep.norm_equality_gap = std::max(rep.norm_equality_gap, gap);
        rep.norm_equality_rel_gap
            = std::max(rep.norm_equality_rel_gap, dxx > 1e-14 ? gap / dxx : gap);
    }

    // (d) Hardy-space membership of F₊ and F₋
    for (const auto& s : plus)
        rep.hardy_membership_residual = std::max(rep.hardy_membership_residual, relative_wrong_mass(s, true));
    for (const auto& s : minus)
        rep.hardy_membership_residual = std::max(rep.hardy_membership_residual, relative_wrong_mass(s, false));

    // (b) contractivity on the disk
    for (Complex z : disk_points(opts.disk_points, opts.disk_radius)) {
        const CMatrix w = lft_solution(cm, om, z);
        if (w.size() > 0)
            rep.contractivity_margin = std::max(rep.contractivity_margin, spectral_norm(w) - 1.0);
    }

    // data identity t·F(T₂x) − F(T₁x) = W·(−M₂x, M₁x) on a coarse grid
    for (Complex t : circle_nodes(opts.identity_points)) {
        const LftPoint pt = eval_lft_point(cm, om, t);
        const FValue f = apply_F(cm, pt, eval_fourier_G0(cm, h0, t));
        CMatrix fm(e2 + e1, n);
        fm << f.plus, f.minus;
        CMatrix rhs_data(e2 + e1, n);
        rhs_data << -p.M2, p.M1;
        const CMatrix lhs = t * fm * p.T2 - fm * p.T1;
        const CMatrix rhs = range_weight(pt.w) * rhs_data;
        rep.data_identity_residual
            = std::max(rep.data_identity_residual, (lhs - rhs).norm() / (1.0 + rhs.norm()));
    }

    // (a) interpolation residual
    if (const NpData* np = p.np()) {
        for (std::size_t k = 0; k < np->nodes.size(); ++k) {
            const CMatrix w = lft_solution(cm, om, np->nodes[k]);
            rep.interp_residual = std::max(rep.interp_residual, std::abs(w(0, 0) - np->values[k]));
        }
    } else if (const SarasonData* sd = p.sarason()) {
        // ‖P₊(conj(w)·k_j) − W*k_j‖ in H², via FFT on the quadrature nodes.
        CMatrix kernels(static_cast<Index>(nq), n);
        for (std::size_t q = 0; q < nq; ++q)
            kernels.row(static_cast<Index>(q)) = kernel_values(sd->zeros, nodes[q]).transpose();
        const CMatrix targets = kernels * sd->wstar;
        std::vector<Complex> prod(nq);
        for (Index j = 0; j < n; ++j) {
            for (std::size_t q = 0; q < nq; ++q)
                prod[q] = std::conj(w_samples[0][q]) * kernels(static_cast<Index>(q), j);
            const std::vector<Complex> proj = project_plus(prod);
            double err = 0.0;
            for (std::size_t q = 0; q < nq; ++q)
                err += std::norm(proj[q] - targets(static_cast<Index>(q), j));
            rep.interp_residual = std::max(rep.interp_residual, std::sqrt(err / static_cast<double>(nq)));
        }
    } else if (const BoundaryData* bd = p.boundary()) {
        const CMatrix lim = radial_limit(cm, om, bd->t0, opts.radial_step);
        rep.interp_residual = std::abs(lim(0, 0) - bd->w0);
    } else {
        rep.interp_residual = rep.data_identity_residual;
    }
    return rep;
}

} // namespace aip
