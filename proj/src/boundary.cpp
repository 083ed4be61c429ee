#include "aip/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "aip/errors.hpp"

namespace aip {

std::vector<double> default_radii()
{
    std::vector<double> r;
    for (int k = 1; k <= 6; ++k)
        r.push_back(1.0 - std::pow(10.0, -k));
    return r;
}

QuotientEstimate caratheodory_quotient(const ScalarFunction& w, Complex t0,
                                       std::span<const double> radii)
{
    if (radii.empty())
        throw AipError(ErrorKind::InvalidInput, "need at least one radius");
    QuotientEstimate out;
    for (double r : radii) {
        if (!(r < 1.0) || r < 0.0)
            throw AipError(ErrorKind::InvalidInput, "radii must lie in [0, 1)");
        const double q = (1.0 - std::norm(w(r * t0))) / (1.0 - r * r);
        out.trail.push_back(std::max(q, 0.0));
    }
    out.value = out.trail.back();
    if (out.trail.size() >= 2) {
        const double prev = out.trail[out.trail.size() - 2];
        out.converged = std::abs(out.value - prev) <= 1e-3 * std::max(std::abs(out.value), 1e-12)
                        || std::abs(out.value - prev) <= 1e-12;
    }
    return out;
}

namespace {

// ∫ over φ ∈ [lo, hi] ∪ [2π − hi, 2π − lo] measured from arg t0, divided by 2π.
double arc_integral(const ScalarFunction& w, Complex t0, Complex w0, double lo, double hi,
                    const IntegralOptions& opts)
{
    const double theta0 = std::arg(t0);
    auto integrand = [&](double phi) {
        const Complex t = std::polar(1.0, theta0 + phi);
        const Complex wt = w(t);
        const double d2 = std::norm(t - t0);
        return (std::norm(wt - w0) + (1.0 - std::norm(wt))) / d2;
    };
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double val = gauss_kronrod<double, 31>::integrate(integrand, lo, hi, opts.max_depth, opts.rel_tol, &err);
    if (hi < std::numbers::pi)
        val += gauss_kronrod<double, 31>::integrate(integrand, 2.0 * std::numbers::pi - hi,
                                                    2.0 * std::numbers::pi - lo, opts.max_depth,
                                                    opts.rel_tol, &err);
    return val / (2.0 * std::numbers::pi);
}

} // namespace

double caratheodory_integral(const ScalarFunction& w, Complex t0, Complex w0,
                             const IntegralOptions& opts)
{
    // the shrinking arcs only add thin strips next to t0
    const double i1 = arc_integral(w, t0, w0, opts.arc, 2.0 * std::numbers::pi - opts.arc, opts);
    // Next to t0 the integrand carries rounding noise of order eps/|t − t0|²,
    // so the strips cannot be refined to the full tolerance.
    IntegralOptions strip = opts;
    strip.rel_tol = std::max(opts.rel_tol, 1e-9);
    strip.max_depth = std::min(opts.max_depth, 8u);
    const double i2 = i1 + arc_integral(w, t0, w0, opts.arc / 2.0, opts.arc, strip);
    const double i4 = i2 + arc_integral(w, t0, w0, opts.arc / 4.0, opts.arc / 2.0, strip);
    const double d1 = i2 - i1;
    const double d2 = i4 - i2;
    // A finite integral approaches its limit like O(arc); a divergent one
    // grows like 1/arc, so successive increments double.
    if (d2 > 1e-2 * (1.0 + std::abs(i4)) && d2 > 1.5 * d1)
        return std::numeric_limits<double>::infinity();
    const double r1 = 2.0 * i2 - i1;
    const double r2 = 2.0 * i4 - i2;
    return std::max((4.0 * r2 - r1) / 3.0, 0.0);
}

AngularDerivativeEstimate estimate_angular_derivative(const ScalarFunction& w, Complex t0,
                                                      Complex w0, const IntegralOptions& opts)
{
    AngularDerivativeEstimate est;
    const std::vector<double> radii = default_radii();
    const QuotientEstimate q = caratheodory_quotient(w, t0, radii);
    est.d_liminf = q.value;
    est.converged = q.converged;
    est.w0_limit = 2.0 * w((1.0 - 1e-4) * t0) - w((1.0 - 2e-4) * t0);
    est.d_integral = caratheodory_integral(w, t0, w0, opts);
    return est;
}

ScalarFunction scalar_solution(const CoefficientMatrix& cm, const SchurParameter& om)
{
    if (cm.dim_e1 != 1 || cm.dim_e2 != 1)
        throw AipError(ErrorKind::PreconditionViolation, "scalar solutions need dim E1 = dim E2 = 1");
    return [&cm, om](Complex z) { return lft_solution(cm, om, z)(0, 0); };
}

bool boundary_residual_detect(const CoefficientMatrix& cm, const SchurParameter& om, Complex t0)
{
    if (cm.dim_n1 != 1 || cm.dim_n2 != 1 || om.rows() != 1 || om.cols() != 1)
        throw AipError(ErrorKind::PreconditionViolation, "residual detection needs dim N1 = dim N2 = 1");
    if (std::abs(std::abs(t0) - 1.0) > 1e-12)
        throw AipError(ErrorKind::PreconditionViolation, "t0 must be unimodular");
    const Complex s_t0 = eval_S_blocks(cm, t0).s(0, 0);
    if (std::abs(std::abs(s_t0) - 1.0) > 1e-8)
        throw AipError(ErrorKind::PreconditionViolation, "|s(t0)| must equal 1", std::abs(s_t0));

    constexpr double r1 = 1.0 - 1e-4;
    constexpr double r2 = 1.0 - 2e-4;
    const Complex o1 = om(r1 * t0)(0, 0);
    const Complex o2 = om(r2 * t0)(0, 0);
    const Complex limit = 2.0 * o1 - o2;
    const double q1 = (1.0 - std::norm(o1)) / (1.0 - r1 * r1);
    const double q2 = (1.0 - std::norm(o2)) / (1.0 - r2 * r2);
    return std::abs(limit - std::conj(s_t0)) < 1e-6 && std::max(q1, q2) < 1e6;
}

} // namespace aip
