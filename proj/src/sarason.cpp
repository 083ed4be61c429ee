#include "aip/sarason.hpp"

#include <algorithm>
#include <cmath>

#include "aip/circle.hpp"
#include "aip/errors.hpp"
#include "aip/parametrization.hpp"

namespace aip {

namespace {

const SarasonData& require_sarason(const AipProblem& p)
{
    const SarasonData* sd = p.sarason();
    if (sd == nullptr)
        throw AipError(ErrorKind::PreconditionViolation, "a Sarason-built problem is required");
    return *sd;
}

void require_scalar_indeterminate(const CoefficientMatrix& cm)
{
    if (cm.dim_e1 != 1 || cm.dim_e2 != 1 || cm.dim_n1 != 1 || cm.dim_n2 != 1)
        throw AipError(ErrorKind::PreconditionViolation,
                       "scalar indeterminate data required (E1 = E2 = N1 = N2 = 1)");
}

std::vector<Complex> row_samples(const CMatrix& m, Index r)
{
    std::vector<Complex> out(static_cast<std::size_t>(m.cols()));
    for (Index q = 0; q < m.cols(); ++q)
        out[static_cast<std::size_t>(q)] = m(r, q);
    return out;
}

CMatrix project_rows(const CMatrix& m, bool plus)
{
    CMatrix out(m.rows(), m.cols());
    for (Index r = 0; r < m.rows(); ++r) {
        const std::vector<Complex> s = row_samples(m, r);
        const std::vector<Complex> pr = plus ? project_plus(s) : project_minus(s);
        for (Index q = 0; q < m.cols(); ++q)
            out(r, q) = pr[static_cast<std::size_t>(q)];
    }
    return out;
}

// L² pairing ⟨f, g⟩ of sampled vector functions (components × nodes).
Complex pairing(const CMatrix& f, const CMatrix& g)
{
    return (g.conjugate().cwiseProduct(f)).sum() / static_cast<double>(f.cols());
}

double relative_mass(std::span<const Complex> samples, bool negative)
{
    FourierSeries fs(samples);
    const double total = fs.total_mass();
    if (total < 1e-28)
        return 0.0;
    return (negative ? fs.negative_mass() : fs.nonnegative_mass()) / total;
}

// W_S·u column by column.
CMatrix apply_weight(const std::vector<CMatrix>& s_values, const CMatrix& u)
{
    CMatrix out(u.rows(), u.cols());
    for (Index q = 0; q < u.cols(); ++q)
        out.col(q) = range_weight(s_values[static_cast<std::size_t>(q)]) * u.col(q);
    return out;
}

std::vector<CMatrix> sample_S(const CoefficientMatrix& cm, const std::vector<Complex>& nodes)
{
    std::vector<CMatrix> out;
    out.reserve(nodes.size());
    for (Complex t : nodes)
        out.push_back(eval_S(cm, t));
    return out;
}

} // namespace

DenseSetSample eval_FS(const CoefficientMatrix& cm, const AipProblem& p, const CVector& x,
                       std::size_t grid_n)
{
    const SarasonData& sd = require_sarason(p);
    if (grid_n < 64)
        throw AipError(ErrorKind::PreconditionViolation, "grid needs at least 64 nodes");
    if (x.size() != p.dim_x())
        throw AipError(ErrorKind::DimensionMismatch, "x must have one coefficient per kernel");

    const Index e1 = cm.dim_e1, e2 = cm.dim_e2, n1 = cm.dim_n1, n2 = cm.dim_n2;
    const Index top = e2 + n1, bot = e1 + n2;
    DenseSetSample out;
    out.x = x;
    out.grid = circle_nodes(grid_n);
    const auto nq = static_cast<Index>(grid_n);
    const std::vector<CMatrix> s_values = sample_S(cm, out.grid);

    CMatrix xfun(1, nq);
    CMatrix s0x(1, nq);
    for (Index q = 0; q < nq; ++q) {
        const auto qu = static_cast<std::size_t>(q);
        xfun(0, q) = kernel_values(sd.zeros, out.grid[qu]).transpose() * x;
        s0x(0, q) = std::conj(s_values[qu](0, 0)) * xfun(0, q);
    }
    const CMatrix p0 = project_rows(s0x, true);
    CMatrix u = CMatrix::Zero(top + bot, nq);
    u.row(0) = xfun.row(0);
    u.row(top) = -p0.row(0);
    const CMatrix model = apply_weight(s_values, u);

    CMatrix m1_hat = CMatrix::Zero(bot, p.dim_x());
    m1_hat.topRows(e1) = p.M1;
    CMatrix m2_hat = CMatrix::Zero(top, p.dim_x());
    m2_hat.topRows(e2) = p.M2;
    const CVector h0 = cm.gram.embed * x;

    out.fs_values.resize(top + bot, nq);
    for (Index q = 0; q < nq; ++q) {
        const auto qu = static_cast<std::size_t>(q);
        const Complex t = out.grid[qu];
        const CMatrix& s = s_values[qu];
        const CVector y = (t * p.T2 - p.T1).partialPivLu().solve(x);
        CVector fs(top + bot);
        fs << s * (m1_hat * y) - m2_hat * y, m1_hat * y - s.adjoint() * (m2_hat * y);
        out.fs_values.col(q) = fs;

        const FourierPair g0 = eval_fourier_G0(cm, h0, t);
        CVector direct(top + bot);
        direct << g0.plus, g0.minus;
        out.g0_mismatch = std::max(out.g0_mismatch, (fs - direct).cwiseAbs().maxCoeff());
        out.model_mismatch = std::max(out.model_mismatch, (fs - model.col(q)).cwiseAbs().maxCoeff());
    }
    out.hs_norm_sq = std::real(pairing(out.fs_values, u));

    if (n2 > 0) {
        std::vector<Complex> s2x(grid_n);
        for (std::size_t q = 0; q < grid_n; ++q)
            s2x[q] = std::conj(s_values[q](0, e1)) * xfun(0, static_cast<Index>(q));
        out.s2_analytic_mass = relative_mass(s2x, false);
    }
    return out;
}

InnerFactor divide_by_inner(std::span<const Complex> f, std::span<const Complex> theta)
{
    if (f.size() != theta.size())
        throw AipError(ErrorKind::DimensionMismatch, "sample counts differ");
    InnerFactor out;
    out.quotient.resize(f.size());
    for (std::size_t q = 0; q < f.size(); ++q) {
        out.quotient[q] = std::conj(theta[q]) * f[q];
        out.modulus_excess = std::max(out.modulus_excess, std::abs(out.quotient[q]) - 1.0);
    }
    out.wrong_mass = relative_mass(out.quotient, true);
    return out;
}

InnerFactor factor_s2_through_theta(const CoefficientMatrix& cm, const std::vector<Complex>& zeros,
                                    std::size_t grid_n)
{
    if (cm.dim_e2 != 1 || cm.dim_n2 != 1)
        throw AipError(ErrorKind::PreconditionViolation, "scalar E2 and N2 required");
    const std::vector<Complex> nodes = circle_nodes(grid_n);
    std::vector<Complex> s2(grid_n), theta(grid_n);
    for (std::size_t q = 0; q < grid_n; ++q) {
        s2[q] = eval_S_blocks(cm, nodes[q]).s2(0, 0);
        theta[q] = blaschke_product(zeros, nodes[q]);
    }
    return divide_by_inner(s2, theta);
}

double check_outer(std::span<const Complex> samples, Complex f_at_0)
{
    if (samples.empty())
        throw AipError(ErrorKind::InvalidInput, "no samples");
    if (std::abs(f_at_0) < 1e-12)
        throw AipError(ErrorKind::DegenerateInput, "f vanishes at the origin", std::abs(f_at_0));
    double mean_log = 0.0;
    for (Complex f : samples) {
        if (std::abs(f) < 1e-12)
            throw AipError(ErrorKind::DegenerateInput, "f vanishes on the grid", std::abs(f));
        mean_log += std::log(std::abs(f));
    }
    mean_log /= static_cast<double>(samples.size());
    return std::abs(std::log(std::abs(f_at_0)) - mean_log);
}

SarasonNormalization normalize_sarason(const CoefficientMatrix& cm, const std::vector<Complex>& zeros,
                                       std::size_t grid_n)
{
    require_scalar_indeterminate(cm);
    SarasonNormalization nz;
    const Complex s1_0 = eval_S_blocks(cm, 0.0).s1(0, 0);
    // s̃₂(0) is the mean of s̃₂ over the circle; θ(0) may vanish.
    const InnerFactor f = factor_s2_through_theta(cm, zeros, grid_n);
    const Complex st2_0 = circle_mean(f.quotient);
    nz.ok = std::abs(s1_0) > 1e-12 && std::abs(st2_0) > 1e-12;
    if (nz.ok) {
        nz.alpha = std::conj(s1_0) / std::abs(s1_0);
        nz.beta = std::conj(st2_0) / std::abs(st2_0);
    }
    nz.s1_at_0 = std::abs(s1_0);
    nz.stilde2_at_0 = std::abs(st2_0);
    const std::vector<Complex> nodes = circle_nodes(grid_n);
    for (std::size_t q = 0; q < grid_n; ++q) {
        const Complex s1 = nz.alpha * eval_S_blocks(cm, nodes[q]).s1(0, 0);
        nz.outer_mismatch = std::max(nz.outer_mismatch, std::abs(s1 - nz.beta * f.quotient[q]));
    }
    return nz;
}

MatrixFunction normalized_S(const CoefficientMatrix& cm, const SarasonNormalization& nz)
{
    return [&cm, nz](Complex z) {
        CMatrix s = eval_S(cm, z);
        s.bottomRows(cm.dim_n1) *= nz.alpha;
        s.rightCols(cm.dim_n2) *= nz.beta;
        return s;
    };
}

double indeterminacy_infimum(const MatrixFunction& s, const std::vector<Complex>& zeros,
                            std::size_t quad_n, double pinv_tol)
{
    if (quad_n < 64)
        throw AipError(ErrorKind::PreconditionViolation, "quadrature needs at least 64 nodes");
    const std::vector<Complex> nodes = circle_nodes(quad_n);
    const auto nq = static_cast<Index>(quad_n);
    const auto nk = static_cast<Index>(zeros.size());
    CMatrix a(2, nq);
    std::vector<CMatrix> b(static_cast<std::size_t>(nk), CMatrix(2, nq));
    for (Index q = 0; q < nq; ++q) {
        const Complex t = nodes[static_cast<std::size_t>(q)];
        const CMatrix sv = s(t);
        if (sv.rows() != 2 || sv.cols() != 2)
            throw AipError(ErrorKind::DimensionMismatch, "a 2x2 coefficient matrix is required");
        a(0, q) = std::conj(sv(1, 0));
        a(1, q) = std::conj(sv(1, 1));
        const CVector k = kernel_values(zeros, t);
        for (Index j = 0; j < nk; ++j) {
            b[static_cast<std::size_t>(j)](0, q) = std::conj(sv(0, 0)) * k(j);
            b[static_cast<std::size_t>(j)](1, q) = std::conj(sv(0, 1)) * k(j);
        }
    }
    a = project_rows(a, false);
    for (CMatrix& bj : b)
        bj = project_rows(bj, false);

    CMatrix gram(nk, nk);
    CVector rhs(nk);
    for (Index i = 0; i < nk; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        rhs(i) = pairing(a, b[iu]);
        for (Index j = 0; j < nk; ++j)
            gram(i, j) = pairing(b[static_cast<std::size_t>(j)], b[iu]);
    }
    const CVector c = pinv(gram, pinv_tol) * rhs;
    CMatrix resid = a;
    for (Index j = 0; j < nk; ++j)
        resid -= c(j) * b[static_cast<std::size_t>(j)];
    return std::real(pairing(resid, resid));
}

IndeterminacyCriterion check_indeterminacy_criterion(const CoefficientMatrix& cm, const AipProblem& p, std::size_t quad_n)
{
    const SarasonData& sd = require_sarason(p);
    require_scalar_indeterminate(cm);
    IndeterminacyCriterion out;
    out.normalization = normalize_sarason(cm, sd.zeros, quad_n);
    out.infimum = indeterminacy_infimum(normalized_S(cm, out.normalization), sd.zeros, quad_n);
    return out;
}

std::vector<double> denseness_residuals(const CoefficientMatrix& cm, const AipProblem& p,
                                        int max_degree, std::size_t quad_n)
{
    const SarasonData& sd = require_sarason(p);
    require_scalar_indeterminate(cm);
    if (quad_n < 64)
        throw AipError(ErrorKind::PreconditionViolation, "quadrature needs at least 64 nodes");
    const std::vector<Complex> nodes = circle_nodes(quad_n);
    const auto nq = static_cast<Index>(quad_n);
    const auto nk = static_cast<Index>(sd.zeros.size());
    const std::vector<CMatrix> s_values = sample_S(cm, nodes);

    // u_j = (k_j, 0, −P₊s̄₀k_j, 0) so that F^S k_j = W_S·u_j.
    std::vector<CMatrix> u(static_cast<std::size_t>(nk), CMatrix::Zero(4, nq));
    for (Index j = 0; j < nk; ++j) {
        CMatrix& uj = u[static_cast<std::size_t>(j)];
        CMatrix s0k(1, nq);
        for (Index q = 0; q < nq; ++q) {
            const auto qu = static_cast<std::size_t>(q);
            uj(0, q) = kernel_values(sd.zeros, nodes[qu])(j);
            s0k(0, q) = std::conj(s_values[qu](0, 0)) * uj(0, q);
        }
        uj.row(2) = -project_rows(s0k, true).row(0);
    }
    std::vector<CMatrix> f;
    for (const CMatrix& uj : u)
        f.push_back(apply_weight(s_values, uj));
    CMatrix gram(nk, nk);
    for (Index i = 0; i < nk; ++i)
        for (Index j = 0; j < nk; ++j)
            gram(i, j) = pairing(f[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(i)]);
    const CMatrix gram_pinv = pinv(gram, 1e-10);

    std::vector<double> out;
    for (int k = 0; k <= max_degree; ++k) {
        CMatrix uv = CMatrix::Zero(4, nq);
        CMatrix conj_s(2, nq);
        for (Index q = 0; q < nq; ++q) {
            const auto qu = static_cast<std::size_t>(q);
            const Complex h = std::pow(nodes[qu], k);
            uv(1, q) = h;
            conj_s(0, q) = std::conj(s_values[qu](1, 0)) * h;
            conj_s(1, q) = std::conj(s_values[qu](1, 1)) * h;
        }
        const CMatrix pc = project_rows(conj_s, true);
        uv.row(2) = -pc.row(0);
        uv.row(3) = -pc.row(1);
        const CMatrix v = apply_weight(s_values, uv);
        const double norm_sq = std::real(pairing(v, uv));
        CVector c(nk);
        for (Index i = 0; i < nk; ++i)
            c(i) = pairing(v, u[static_cast<std::size_t>(i)]);
        const double proj_sq = std::real(c.dot(gram_pinv * c));
        out.push_back(norm_sq > 1e-300 ? std::abs(norm_sq - proj_sq) / norm_sq : 0.0);
    }
    return out;
}

} // namespace aip
