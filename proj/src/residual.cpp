#include "aip/residual.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "aip/circle.hpp"
#include "aip/errors.hpp"

namespace aip {

namespace {

CMatrix a_circ_from(const LftPoint& pt)
{
    const Index n2 = pt.omega.rows();
    const Index n1 = pt.omega.cols();
    CMatrix a(n2 + n1, n2 + n1);
    a << pt.pp.psi_circ - 0.5 * CMatrix::Identity(n2, n2), pt.omega * pt.pp.phi_circ,
        pt.s.s * pt.pp.psi_circ, pt.pp.phi_circ - 0.5 * CMatrix::Identity(n1, n1);
    return a;
}

CMatrix density_from(const LftPoint& pt, double pinv_tol)
{
    const Index e2 = pt.w.rows();
    const Index e1 = pt.w.cols();
    const Index n2 = pt.omega.rows();
    const Index n1 = pt.omega.cols();
    CMatrix phi_mat(e2 + e1, n2 + n1);
    phi_mat << pt.pp.psi, pt.pp.psi * pt.omega,
        pt.pp.phi.adjoint() * pt.omega.adjoint(), pt.pp.phi.adjoint();
    const CMatrix d = phi_mat.adjoint() * pinv(range_weight(pt.w), pinv_tol) * phi_mat;
    return 0.5 * (d + d.adjoint());
}

struct Kernels {
    CMatrix poisson; // ∫ P_z · density
    CMatrix herglotz; // ∫ (t + z)/(t − z) · density
};

Kernels integrate_density(const CoefficientMatrix& cm, const SchurParameter& om, Complex z,
                          std::size_t quad_n, double pinv_tol)
{
    if (quad_n < 16)
        throw AipError(ErrorKind::PreconditionViolation, "quadrature needs at least 16 nodes");
    const Index n = cm.dim_n1 + cm.dim_n2;
    Kernels k{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
    const double mod2 = std::norm(z);
    for (Complex t : circle_nodes(quad_n)) {
        const CMatrix d = density_from(eval_lft_point(cm, om, t), pinv_tol);
        k.poisson += ((1.0 - mod2) / std::norm(t - z)) * d;
        k.herglotz += ((t + z) / (t - z)) * d;
    }
    const double inv = 1.0 / static_cast<double>(quad_n);
    k.poisson *= inv;
    k.herglotz *= inv;
    return k;
}

void require_disk(Complex z)
{
    if (!(std::abs(z) < 1.0))
        throw AipError(ErrorKind::PreconditionViolation, "z must lie in the open unit disk");
}

} // namespace

CMatrix eval_a_circ(const CoefficientMatrix& cm, const SchurParameter& om, Complex z)
{
    require_disk(z);
    return a_circ_from(eval_lft_point(cm, om, z));
}

CMatrix boundary_density(const CoefficientMatrix& cm, const SchurParameter& om, Complex t,
                         double pinv_tol)
{
    return density_from(eval_lft_point(cm, om, t), pinv_tol);
}

CMatrix eval_defect(const CoefficientMatrix& cm, const SchurParameter& om, Complex z,
                    std::size_t quad_n, double pinv_tol)
{
    return eval_spectral(cm, om, z, quad_n, pinv_tol).defect;
}

SpectralEval eval_spectral(const CoefficientMatrix& cm, const SchurParameter& om, Complex z,
                           std::size_t quad_n, double pinv_tol)
{
    require_disk(z);
    SpectralEval out;
    out.z = z;
    out.a_circ = eval_a_circ(cm, om, z);
    const Kernels k = integrate_density(cm, om, z, quad_n, pinv_tol);
    out.defect = out.a_circ + out.a_circ.adjoint() - k.poisson;

    const CMatrix om0 = om(0.0);
    const Index n2 = cm.dim_n2;
    const Index n1 = cm.dim_n1;
    CMatrix skew(n2 + n1, n2 + n1);
    skew << CMatrix::Zero(n2, n2), -om0, om0.adjoint(), CMatrix::Zero(n1, n1);
    out.a_omega = 0.5 * skew + out.a_circ - 0.5 * k.herglotz;
    return out;
}

double check_property_2prime(const CoefficientMatrix& cm, std::span<const Complex> t_samples,
                             double pinv_tol)
{
    const Index e1 = cm.dim_e1, e2 = cm.dim_e2, n1 = cm.dim_n1, n2 = cm.dim_n2;
    double worst = 0.0;
    for (Complex t : t_samples) {
        const SBlocks s = eval_S_blocks(cm, t);
        CMatrix lhs(n2 + n1, n2 + n1);
        lhs << CMatrix::Identity(n2, n2), s.s.adjoint(), s.s, CMatrix::Identity(n1, n1);
        CMatrix right = CMatrix::Zero(e2 + e1, n2 + n1);
        right.topLeftCorner(e2, n2) = s.s2;
        right.bottomRightCorner(e1, n1) = s.s1.adjoint();
        const CMatrix rhs = right.adjoint() * pinv(range_weight(s.s0), pinv_tol) * right;
        worst = std::max(worst, (lhs - rhs).norm());
    }
    return worst;
}

namespace {

Index numerical_rank(const CMatrix& h, double tol)
{
    if (h.size() == 0)
        return 0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return static_cast<Index>((es.eigenvalues().array().abs() > tol).count());
}

} // namespace

RankIdentity check_property_2doubleprime(const CoefficientMatrix& cm,
                                         std::span<const Complex> t_samples, double tol)
{
    RankIdentity out;
    out.rhs_rank_min = cm.dim_e1;
    for (Complex t : t_samples) {
        const CMatrix s = eval_S(cm, t);
        const SBlocks b = cm.split(s);
        const Index lhs = numerical_rank(CMatrix::Identity(s.cols(), s.cols()) - s.adjoint() * s, tol);
        const Index rhs = numerical_rank(CMatrix::Identity(cm.dim_e1, cm.dim_e1) - b.s0.adjoint() * b.s0, tol)
                          - cm.dim_n1;
        out.lhs_rank_max = std::max(out.lhs_rank_max, lhs);
        out.rhs_rank_min = std::min(out.rhs_rank_min, rhs);
        if (lhs != rhs) {
            out.holds = false;
            ++out.failures;
        }
    }
    return out;
}

SingularMassGaps check_property_1prime(const CoefficientMatrix& cm, const SchurParameter& om,
                                       std::size_t quad_n)
{
    if (cm.dim_n1 != 1 || cm.dim_n2 != 1 || om.rows() != 1 || om.cols() != 1)
        throw AipError(ErrorKind::PreconditionViolation, "singular-mass test needs scalar N1 and N2");
    if (quad_n < 16)
        throw AipError(ErrorKind::PreconditionViolation, "quadrature needs at least 16 nodes");

    // The two Herglotz functions coincide for scalar data; both are reported.
    auto herglotz = [&](Complex z, bool omega_first) {
        const Complex s = eval_S_blocks(cm, z).s(0, 0);
        const Complex o = om(z)(0, 0);
        const Complex p = omega_first ? o * s : s * o;
        return (1.0 + p) / (1.0 - p);
    };
    const std::array<Complex, 4> probes{Complex(0.0, 0.0), Complex(0.3, 0.0), Complex(-0.25, 0.4),
                                        Complex(0.0, -0.5)};
    const std::vector<Complex> nodes = circle_nodes(quad_n);

    auto gap = [&](bool omega_first) {
        std::vector<double> boundary_re(nodes.size());
        for (std::size_t q = 0; q < nodes.size(); ++q)
            boundary_re[q] = std::real(herglotz(nodes[q], omega_first));
        double worst = 0.0;
        for (Complex z : probes) {
            double integral = 0.0;
            for (std::size_t q = 0; q < nodes.size(); ++q)
                integral += (1.0 - std::norm(z)) / std::norm(nodes[q] - z) * boundary_re[q];
            integral /= static_cast<double>(nodes.size());
            const double inside = std::real(herglotz(z, omega_first));
            worst = std::max(worst, std::abs(inside - integral) / std::max(std::abs(inside), 1e-300));
        }
        return worst;
    };
    return SingularMassGaps{gap(true), gap(false)};
}

double inner_defect(const CoefficientMatrix& cm, std::span<const Complex> t_samples)
{
    double worst = 0.0;
    for (Complex t : t_samples) {
        const CMatrix s = eval_S(cm, t);
        worst = std::max(worst, spectral_norm(CMatrix::Identity(s.cols(), s.cols()) - s.adjoint() * s));
    }
    return worst;
}

} // namespace aip
