#include "aip/colligation.hpp"

#include <cmath>
#include <string>

#include "aip/errors.hpp"

namespace aip {

GramSpace build_gram_space(const AipProblem& p, double tol)
{
    const PsdFactor f = hermitian_psd_decompose(p.D, tol);
    return GramSpace{f.rank, f.factor.adjoint()};
}

DataIsometry build_isometry(const AipProblem& p, const GramSpace& g, double tol)
{
    const Index h = g.dim;
    const Index n = p.dim_x();
    DataIsometry out;
    out.generators_in.resize(h + p.dim_e1(), n);
    out.generators_in << g.embed * p.T1, p.M1;
    out.generators_out.resize(h + p.dim_e2(), n);
    out.generators_out << g.embed * p.T2, p.M2;

    const TruncatedSvd svd = truncated_svd(out.generators_in, tol);
    const Index r = svd.rank();
    out.d_v = Subspace{out.generators_in.rows(), svd.u};

    // Images of the orthonormal domain basis, then the nearest orthonormal
    // family (polar factor). The correction is bounded by the fit residual.
    const CMatrix image = out.generators_out * svd.v
                          * svd.sigma.cwiseInverse().cast<Complex>().asDiagonal();
    CMatrix q = image;
    if (r > 0) {
        Eigen::JacobiSVD<CMatrix> polar(image, Eigen::ComputeThinU | Eigen::ComputeThinV);
        q = polar.matrixU() * polar.matrixV().adjoint();
    }
    out.v = q * svd.u.adjoint();
    out.delta_v = Subspace{out.generators_out.rows(), q};

    const double scale = std::max(1.0, out.generators_out.norm());
    out.fit_residual = std::max((out.v * out.generators_in - out.generators_out).norm() / scale,
                                (image - q).norm());
    if (out.fit_residual > 1e-8)
        throw AipError(ErrorKind::IllDefined,
                       "generator images are not isometric (residual "
                           + std::to_string(out.fit_residual) + ")",
                       out.fit_residual);
    return out;
}

UnitaryColligation UnitaryColligation::from_blocks(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
{
    if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows()
        || d.rows() != c.rows() || d.cols() != b.cols())
        throw AipError(ErrorKind::DimensionMismatch, "colligation blocks do not fit together");
    UnitaryColligation col;
    col.a_ = std::move(a);
    col.b_ = std::move(b);
    col.c_ = std::move(c);
    col.d_ = std::move(d);
    const CMatrix f = col.full();
    if (f.rows() != f.cols())
        throw AipError(ErrorKind::DimensionMismatch, "a unitary colligation needs dim in = dim out");
    require_finite(f, "colligation");
    const double defect = unitarity_defect(f);
    if (defect > 1e-10)
        throw AipError(ErrorKind::InvalidInput,
                       "colligation is not unitary (defect " + std::to_string(defect) + ")", defect);
    if (col.a_.rows() > 0) {
        Eigen::ComplexEigenSolver<CMatrix> es(col.a_, false);
        for (Index i = 0; i < es.eigenvalues().size(); ++i)
            col.spectrum_.push_back(es.eigenvalues()(i));
    }
    return col;
}

UnitaryColligation UnitaryColligation::from_matrix(const CMatrix& full, Index dim_state, Index dim_in)
{
    const Index dim_out = full.rows() - dim_state;
    if (full.rows() != full.cols() || dim_state > full.rows() || dim_in != dim_out)
        throw AipError(ErrorKind::DimensionMismatch, "cannot split colligation matrix");
    return from_blocks(full.topLeftCorner(dim_state, dim_state),
                       full.topRightCorner(dim_state, dim_in),
                       full.bottomLeftCorner(dim_out, dim_state),
                       full.bottomRightCorner(dim_out, dim_in));
}

CMatrix UnitaryColligation::full() const
{
    CMatrix f(a_.rows() + c_.rows(), a_.cols() + b_.cols());
    f << a_, b_, c_, d_;
    return f;
}

CMatrix UnitaryColligation::resolvent_solve(Complex z, const CMatrix& rhs) const
{
    const Index h = dim_state();
    if (h == 0)
        return CMatrix(0, rhs.cols());
    if (std::abs(z) >= 1.0 - 1e-12) {
        for (Complex lambda : spectrum_) {
            if (std::abs(1.0 - z * lambda) < 1e-8)
                throw AipError(ErrorKind::SingularResolvent,
                               "I − zA is singular near eigenvalue ("
                                   + std::to_string(lambda.real()) + ", "
                                   + std::to_string(lambda.imag()) + ")",
                               std::abs(lambda));
        }
    }
    const CMatrix m = CMatrix::Identity(h, h) - z * a_;
    return m.partialPivLu().solve(rhs);
}

CMatrix eval_char_fn(const UnitaryColligation& col, Complex z)
{
    if (col.dim_state() == 0)
        return col.d();
    return col.d() + z * (col.c() * col.resolvent_solve(z, col.b()));
}

SBlocks CoefficientMatrix::split(const CMatrix& v) const
{
    return SBlocks{v.topLeftCorner(dim_e2, dim_e1), v.topRightCorner(dim_e2, dim_n2),
                   v.bottomLeftCorner(dim_n1, dim_e1), v.bottomRightCorner(dim_n1, dim_n2)};
}

CoefficientMatrix build_universal_colligation(const AipProblem& p, const GramSpace& g, double tol)
{
    CoefficientMatrix cm;
    cm.gram = g;
    cm.isometry = build_isometry(p, g, tol);
    cm.dim_e1 = p.dim_e1();
    cm.dim_e2 = p.dim_e2();
    const Index d = cm.isometry.d_v.dim();
    cm.dim_n1 = g.dim + cm.dim_e1 - d;
    cm.dim_n2 = g.dim + cm.dim_e2 - d;

    const CMatrix full = complete_isometry_to_unitary(
        cm.isometry.v, cm.isometry.d_v, cm.isometry.delta_v,
        CMatrix::Identity(cm.dim_n1, cm.dim_n1), CMatrix::Identity(cm.dim_n2, cm.dim_n2));
    cm.colligation = UnitaryColligation::from_matrix(full, g.dim, cm.dim_e1 + cm.dim_n2);
    cm.normalization = "u1 = u2 = identity on pivoted Gram-Schmidt complement bases of d_V and Delta_V";

    const double s0 = cm.split(cm.colligation.d()).s.norm();
    if (s0 > 1e-10)
        throw AipError(ErrorKind::IllDefined, "universal colligation violates s(0) = 0", s0);
    return cm;
}

CoefficientMatrix build_coefficient_matrix(const AipProblem& p, double tol)
{
    return build_universal_colligation(p, build_gram_space(p, tol), tol);
}

CMatrix eval_S(const CoefficientMatrix& cm, Complex z)
{
    return eval_char_fn(cm.colligation, z);
}

SBlocks eval_S_blocks(const CoefficientMatrix& cm, Complex z)
{
    return cm.split(eval_S(cm, z));
}

FourierPair eval_fourier_G0(const CoefficientMatrix& cm, const CMatrix& h0, Complex z)
{
    const UnitaryColligation& col = cm.colligation;
    if (h0.rows() != col.dim_state())
        throw AipError(ErrorKind::DimensionMismatch, "h0 must live in H0 coordinates");
    FourierPair out;
    if (col.dim_state() == 0) {
        out.plus = CMatrix::Zero(col.dim_out(), h0.cols());
        out.minus = CMatrix::Zero(col.dim_in(), h0.cols());
        return out;
    }
    out.plus = col.c() * col.resolvent_solve(z, h0);
    const Index h = col.dim_state();
    const CMatrix m = CMatrix::Identity(h, h) - std::conj(z) * col.a().adjoint();
    (void)col.resolvent_solve(z, CMatrix::Zero(h, 0)); // spectrum guard
    out.minus = std::conj(z) * (col.b().adjoint() * m.partialPivLu().solve(h0));
    return out;
}

} // namespace aip
