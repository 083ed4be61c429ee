#include "aip/problems.hpp"

#include <cmath>
#include <string>

#include "aip/errors.hpp"

namespace aip {

namespace {

constexpr double kIdentityTol = 1e-10;

void require_in_disk(Complex z, const char* what)
{
    if (!(std::abs(z) < 1.0))
        throw AipError(ErrorKind::InvalidInput, std::string(what) + " must lie in the open unit disk");
}

void require_distinct(const std::vector<Complex>& pts, const char* what)
{
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) <= 1e-12)
                throw AipError(ErrorKind::InvalidInput, std::string(what) + " must be pairwise distinct");
}

void require_unimodular(Complex z, const char* what)
{
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw AipError(ErrorKind::InvalidInput, std::string(what) + " must have modulus 1");
}

double identity_scale(const AipProblem& p)
{
    return std::max(1.0, (p.T2.adjoint() * p.D * p.T2).norm() + (p.T1.adjoint() * p.D * p.T1).norm()
                             + (p.M1.adjoint() * p.M1).norm() + (p.M2.adjoint() * p.M2).norm());
}

} // namespace

double check_fundamental_identity(const AipProblem& p)
{
    const Index n = p.D.rows();
    if (p.D.cols() != n || p.T1.rows() != n || p.T1.cols() != n || p.T2.rows() != n
        || p.T2.cols() != n || p.M1.cols() != n || p.M2.cols() != n)
        throw AipError(ErrorKind::DimensionMismatch, "problem matrices have inconsistent shapes");
    const CMatrix lhs = p.T2.adjoint() * p.D * p.T2 - p.T1.adjoint() * p.D * p.T1;
    const CMatrix rhs = p.M1.adjoint() * p.M1 - p.M2.adjoint() * p.M2;
    return (lhs - rhs).norm();
}

AipProblem make_problem(CMatrix d, CMatrix t1, CMatrix t2, CMatrix m1, CMatrix m2, bool special_case)
{
    AipProblem p{std::move(d), std::move(t1), std::move(t2), std::move(m1), std::move(m2),
                 special_case, std::monostate{}};
    if (p.dim_x() == 0)
        throw AipError(ErrorKind::InvalidInput, "the data space must be non-trivial");
    require_finite(p.D, "D");
    require_finite(p.T1, "T1");
    require_finite(p.T2, "T2");
    require_finite(p.M1, "M1");
    require_finite(p.M2, "M2");
    const double residual = check_fundamental_identity(p);
    (void)hermitian_psd_decompose(p.D, kIdentityTol);
    if (residual > kIdentityTol * identity_scale(p))
        throw AipError(ErrorKind::InvalidInput,
                       "fundamental identity violated (residual " + std::to_string(residual) + ")",
                       residual);
    return p;
}

AipProblem build_np(const NpData& d)
{
    const auto n = d.nodes.size();
    if (n == 0 || d.values.size() != n)
        throw AipError(ErrorKind::InvalidInput, "nodes and values must be non-empty and of equal length");
    for (Complex z : d.nodes)
        require_in_disk(z, "interpolation node");
    require_distinct(d.nodes, "interpolation nodes");

    const auto m = static_cast<Index>(n);
    AipProblem p;
    p.D.resize(m, m);
    p.T1 = CMatrix::Zero(m, m);
    p.T2 = CMatrix::Identity(m, m);
    p.M1 = CMatrix::Ones(1, m);
    p.M2.resize(1, m);
    for (Index k = 0; k < m; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        p.T1(k, k) = d.nodes[ku];
        p.M2(0, k) = d.values[ku];
        for (Index j = 0; j < m; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            p.D(k, j) = (1.0 - std::conj(d.values[ku]) * d.values[ju])
                        / (1.0 - std::conj(d.nodes[ku]) * d.nodes[ju]);
        }
    }
    require_finite(p.D, "Pick matrix");
    (void)hermitian_psd_decompose(p.D, kIdentityTol); // NotPsd ⇔ no solution
    p.special_case = true;
    p.origin = d;
    return p;
}

AipProblem build_boundary(const BoundaryData& d)
{
    require_unimodular(d.t0, "t0");
    require_unimodular(d.w0, "w0");
    if (!(d.bound >= 0.0) || !std::isfinite(d.bound))
        throw AipError(ErrorKind::InvalidInput, "the angular-derivative bound must be finite and ≥ 0");
    AipProblem p;
    p.D = CMatrix::Constant(1, 1, d.bound);
    p.T1 = CMatrix::Constant(1, 1, d.t0);
    p.T2 = CMatrix::Identity(1, 1);
    p.M1 = CMatrix::Identity(1, 1);
    p.M2 = CMatrix::Constant(1, 1, d.w0);
    p.special_case = true;
    p.origin = d;
    return p;
}

CMatrix kernel_gram(const std::vector<Complex>& zeros)
{
    const auto n = static_cast<Index>(zeros.size());
    CMatrix g(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j)
            g(k, j) = 1.0 / (1.0 - std::conj(zeros[static_cast<std::size_t>(j)])
                                       * zeros[static_cast<std::size_t>(k)]);
    return g;
}

CVector kernel_values(const std::vector<Complex>& zeros, Complex t)
{
    CVector v(static_cast<Index>(zeros.size()));
    for (Index j = 0; j < v.size(); ++j)
        v(j) = 1.0 / (1.0 - std::conj(zeros[static_cast<std::size_t>(j)]) * t);
    return v;
}

Complex blaschke_product(const std::vector<Complex>& zeros, Complex z)
{
    Complex b(1.0);
    for (Complex a : zeros)
        b *= (z - a) / (1.0 - std::conj(a) * z);
    return b;
}

AipProblem build_sarason(const SarasonData& d)
{
    const auto n = static_cast<Index>(d.zeros.size());
    if (n == 0)
        throw AipError(ErrorKind::InvalidInput, "the Blaschke product needs at least one zero");
    for (Complex z : d.zeros)
        require_in_disk(z, "Blaschke zero");
    require_distinct(d.zeros, "Blaschke zeros");
    if (d.wstar.rows() != n || d.wstar.cols() != n)
        throw AipError(ErrorKind::DimensionMismatch, "W* must be n×n in the kernel basis");
    require_finite(d.wstar, "W*");

    // T*_θ k_j = P₊(conj(t)·k_j) = conj(ζ_j)·k_j.
    CMatrix t2 = CMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        t2(j, j) = std::conj(d.zeros[static_cast<std::size_t>(j)]);
    const double commutator = (d.wstar * t2 - t2 * d.wstar).norm();
    if (commutator > 1e-9 * std::max(1.0, d.wstar.norm()))
        throw AipError(ErrorKind::InvalidInput, "W* does not commute with T*_θ", commutator);

    const CMatrix g = kernel_gram(d.zeros);
    AipProblem p;
    p.D = g - d.wstar.adjoint() * g * d.wstar;
    p.D = 0.5 * (p.D + p.D.adjoint()).eval();
    try {
        (void)hermitian_psd_decompose(p.D, 1e-9);
    } catch (const AipError& e) {
        if (e.kind() == ErrorKind::NotPsd)
            throw AipError(ErrorKind::NotContractive, "W* is not a contraction on K_θ", e.value());
        throw;
    }
    p.T1 = CMatrix::Identity(n, n);
    p.T2 = t2;
    // Every kernel function equals 1 at the origin.
    p.M1 = CMatrix::Ones(1, n) * d.wstar;
    p.M2 = CMatrix::Ones(1, n);
    p.special_case = true;
    p.origin = d;
    return p;
}

SarasonData sarason_from_np(const NpData& d)
{
    if (d.nodes.size() != d.values.size())
        throw AipError(ErrorKind::InvalidInput, "nodes and values must have equal length");
    const auto n = static_cast<Index>(d.nodes.size());
    CMatrix wstar = CMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        wstar(j, j) = std::conj(d.values[static_cast<std::size_t>(j)]);
    return SarasonData{d.nodes, wstar};
}

} // namespace aip
