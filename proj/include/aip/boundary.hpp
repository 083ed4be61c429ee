#pragma once

// Carathéodory–Julia angular derivative estimates and the detector for a
// non-trivial residual part in the boundary interpolation problem.

#include <functional>
#include <span>
#include <vector>

#include "aip/colligation.hpp"
#include "aip/parametrization.hpp"

namespace aip {

using ScalarFunction = std::function<Complex(Complex)>;

struct AngularDerivativeEstimate {
    double d_liminf = 0.0;  // radial quotient (1 − |w|²)/(1 − r²) at the last radius
    double d_integral = 0.0; // boundary integral, +inf when it diverges
    Complex w0_limit;       // radial limit of w at t0
    bool converged = false; // last two quotients agree to 1e-3 relative
};

/// r_k = 1 − 10⁻ᵏ, k = 1..6.
std::vector<double> default_radii();

struct QuotientEstimate {
    double value = 0.0;
    bool converged = false;
    std::vector<double> trail; // quotient at every radius
};

/// (1 − |w(r·t0)|²)/(1 − r²) along increasing radii; returns the last value.
QuotientEstimate caratheodory_quotient(const ScalarFunction& w, Complex t0,
                                       std::span<const double> radii);

struct IntegralOptions {
    double arc = 1e-3;       // half-width (radians) of the excluded arc around t0
    double rel_tol = 1e-12;  // adaptive Gauss–Kronrod tolerance
    unsigned max_depth = 20;
};

/// ∫_T |(w − w0)/(t − t0)|² + (1 − |w|²)/|t − t0|² dm, with the arc around t0
/// removed and the removal extrapolated away (arc, arc/2, arc/4, two
/// Richardson steps). Returns +inf if the truncated integrals blow up as the
/// arc shrinks.
double caratheodory_integral(const ScalarFunction& w, Complex t0, Complex w0,
                             const IntegralOptions& opts = {});

/// Both estimators plus the radial limit of w at t0.
AngularDerivativeEstimate estimate_angular_derivative(const ScalarFunction& w, Complex t0,
                                                      Complex w0,
                                                      const IntegralOptions& opts = {});

/// z ↦ w(z)(0, 0) for the solution generated by ω.
ScalarFunction scalar_solution(const CoefficientMatrix& cm, const SchurParameter& om);

/// True iff ω(z) → conj(s(t0)) radially and the Carathéodory quotient of ω at
/// t0 stays bounded (radii 1 − 1e-4 and 1 − 2e-4, thresholds 1e-6 / 1e6).
/// Requires dim N₁ = dim N₂ = 1 and checks |s(t0)| = 1.
bool boundary_residual_detect(const CoefficientMatrix& cm, const SchurParameter& om, Complex t0);

} // namespace aip
