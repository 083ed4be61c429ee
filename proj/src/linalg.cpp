#include "aip/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "aip/errors.hpp"

namespace aip {

namespace {

// Index of the largest-magnitude entry, lowest index among near-equal ones.
Index dominant_index(const CVector& v)
{
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
            best = i;
            best_abs = a;
        }
    }
    return best;
}

Complex unit_phase_of(Complex c)
{
    const double a = std::abs(c);
    return a > 0.0 ? c / a : Complex(1.0, 0.0);
}

} // namespace

void require_finite(const CMatrix& m, const char* what)
{
    if (!m.allFinite())
        throw AipError(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
}

double spectral_norm(const CMatrix& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double unitarity_defect(const CMatrix& u)
{
    if (u.rows() != u.cols())
        throw AipError(ErrorKind::DimensionMismatch, "unitarity check needs a square matrix");
    const Index n = u.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    return std::max((u.adjoint() * u - id).norm(), (u * u.adjoint() - id).norm());
}

Subspace make_subspace(const CMatrix& basis)
{
    const CMatrix gram = basis.adjoint() * basis;
    if ((gram - CMatrix::Identity(basis.cols(), basis.cols())).norm() > 1e-10)
        throw AipError(ErrorKind::InvalidInput, "subspace basis is not orthonormal");
    return Subspace{basis.rows(), basis};
}

Subspace zero_subspace(Index ambient_dim)
{
    return Subspace{ambient_dim, CMatrix(ambient_dim, 0)};
}

PsdFactor hermitian_psd_decompose(const CMatrix& g, double tol)
{
    if (g.rows() != g.cols())
        throw AipError(ErrorKind::DimensionMismatch, "Gram matrix must be square");
    require_finite(g, "Gram matrix");
    const Index n = g.rows();
    const double scale = g.norm();
    const double asym = (g - g.adjoint()).norm();
    if (asym > tol * scale)
        throw AipError(ErrorKind::NotHermitian, "‖G − Gᴴ‖ = " + std::to_string(asym), asym);
    if (n == 0 || scale == 0.0)
        return PsdFactor{0, CMatrix(n, 0)};

    const CMatrix herm = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    const RVector& lambda = es.eigenvalues();
    const double opnorm = lambda.cwiseAbs().maxCoeff();
    if (lambda.minCoeff() < -tol * opnorm) {
        throw AipError(ErrorKind::NotPsd,
                       "eigenvalue " + std::to_string(lambda.minCoeff()) + " is negative",
                       lambda.minCoeff());
    }

    struct Pair {
        double lambda;
        Index lead;
        Index column;
    };
    std::vector<Pair> kept;
    for (Index j = 0; j < n; ++j) {
        if (lambda(j) > tol * opnorm)
            kept.push_back({lambda(j), dominant_index(es.eigenvectors().col(j)), j});
    }
    std::sort(kept.begin(), kept.end(), [](const Pair& a, const Pair& b) {
        return a.lambda > b.lambda;
    });
    // Reorder runs of (numerically) equal eigenvalues by leading coordinate.
    for (std::size_t i = 0; i < kept.size();) {
        std::size_t j = i + 1;
        while (j < kept.size() && kept[i].lambda - kept[j].lambda <= tol * opnorm)
            ++j;
        std::stable_sort(kept.begin() + static_cast<std::ptrdiff_t>(i),
                         kept.begin() + static_cast<std::ptrdiff_t>(j),
                         [](const Pair& a, const Pair& b) { return a.lead < b.lead; });
        i = j;
    }

    CMatrix factor(n, static_cast<Index>(kept.size()));
    for (Index k = 0; k < factor.cols(); ++k) {
        const Pair& p = kept[static_cast<std::size_t>(k)];
        CVector v = es.eigenvectors().col(p.column);
        v *= std::conj(unit_phase_of(v(p.lead)));
        factor.col(k) = std::sqrt(p.lambda) * v;
    }
    return PsdFactor{factor.cols(), factor};
}

Subspace orthonormal_complement(const Subspace& s)
{
    const Index n = s.ambient_dim;
    const Index target = n - s.dim();
    CMatrix accepted(n, n);
    accepted.leftCols(s.dim()) = s.basis;
    Index filled = s.dim();

    CMatrix residual = CMatrix::Identity(n, n);
    for (int pass = 0; pass < 2; ++pass)
        residual -= s.basis * (s.basis.adjoint() * residual);

    std::vector<bool> used(static_cast<std::size_t>(n), false);
    CMatrix out(n, target);
    for (Index k = 0; k < target; ++k) {
        Index pivot = -1;
        double best = -1.0;
        for (Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)])
                continue;
            const double r = residual.col(j).norm();
            if (r > best * (1.0 + 1e-12) + 1e-300) {
                best = r;
                pivot = j;
            }
        }
        used[static_cast<std::size_t>(pivot)] = true;
        CVector q = residual.col(pivot) / best;
        // One more projection against everything accepted so far.
        q -= accepted.leftCols(filled) * (accepted.leftCols(filled).adjoint() * q);
        q.normalize();
        out.col(k) = q;
        accepted.col(filled++) = q;
        for (int pass = 0; pass < 2; ++pass)
            residual -= q * (q.adjoint() * residual);
    }
    return Subspace{n, out};
}

TruncatedSvd truncated_svd(const CMatrix& m, double tol)
{
    if (m.size() == 0)
        return TruncatedSvd{CMatrix(m.rows(), 0), RVector(0), CMatrix(m.cols(), 0)};
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    Index r = 0;
    while (r < sv.size() && sv(r) > tol * sv(0))
        ++r;
    TruncatedSvd out{svd.matrixU().leftCols(r), sv.head(r), svd.matrixV().leftCols(r)};
    for (Index k = 0; k < r; ++k) {
        const Complex ph = std::conj(unit_phase_of(out.u(dominant_index(out.u.col(k)), k)));
        out.u.col(k) *= ph;
        out.v.col(k) *= ph;
    }
    return out;
}

Subspace range_subspace(const CMatrix& m, double tol)
{
    return Subspace{m.rows(), truncated_svd(m, tol).u};
}

CMatrix pinv(const CMatrix& m, double tol)
{
    if (m.size() == 0)
        return CMatrix(m.cols(), m.rows());
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    CMatrix out = CMatrix::Zero(m.cols(), m.rows());
    if (sv(0) == 0.0)
        return out;
    for (Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= tol * sv(0))
            break;
        out += svd.matrixV().col(k) * (1.0 / sv(k)) * svd.matrixU().col(k).adjoint();
    }
    return out;
}

CMatrix complete_isometry_to_unitary(const CMatrix& v, const Subspace& dom, const Subspace& ran,
                                     const CMatrix& u1, const CMatrix& u2)
{
    const Index m1 = dom.ambient_dim;
    const Index m2 = ran.ambient_dim;
    const Index d = dom.dim();
    if (v.rows() != m2 || v.cols() != m1 || ran.dim() != d || dom.basis.rows() != m1
        || ran.basis.rows() != m2)
        throw AipError(ErrorKind::DimensionMismatch, "isometry and subspaces do not fit");
    if (u1.rows() != m1 - d || u1.cols() != m1 - d || u2.rows() != m2 - d || u2.cols() != m2 - d)
        throw AipError(ErrorKind::DimensionMismatch, "normalisation maps have the wrong size");

    const CMatrix image = v * dom.basis;
    const double iso = (image.adjoint() * image - CMatrix::Identity(d, d)).norm();
    const double leak = (image - ran.projector() * image).norm();
    if (iso > 1e-8 || leak > 1e-8)
        throw AipError(ErrorKind::NotIsometric,
                       "V is not an isometry of dom onto ran (defect "
                           + std::to_string(std::max(iso, leak)) + ")",
                       std::max(iso, leak));
    if (unitarity_defect(u1) > 1e-8 || unitarity_defect(u2) > 1e-8)
        throw AipError(ErrorKind::NotIsometric, "normalisation maps must be unitary");

    const Subspace dom_perp = orthonormal_complement(dom);
    const Subspace ran_perp = orthonormal_complement(ran);
    const Index n1 = m1 - d;
    const Index n2 = m2 - d;
    const Index size = m1 + n2;

    CMatrix out = CMatrix::Zero(size, size);
    out.topLeftCorner(m2, m1) = image * dom.basis.adjoint();
    out.topRightCorner(m2, n2) = ran_perp.basis * u2.adjoint();
    out.bottomLeftCorner(n1, m1) = u1 * dom_perp.basis.adjoint();
    return out;
}

} // namespace aip
