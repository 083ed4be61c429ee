#pragma once

// Spectral function of the residual part of the coupling of the universal
// colligation with a parameter colligation, its real-part defect, and the
// boundary properties of S that follow from the norm equality.
//
// Block layout for everything indexed by N = N₂ ⊕ N₁: first N₂, then N₁.

#include <cstddef>
#include <span>
#include <vector>

#include "aip/colligation.hpp"
#include "aip/parametrization.hpp"

namespace aip {

struct SpectralEval {
    Complex z;
    CMatrix a_omega; // full spectral function, skew constant included
    CMatrix a_circ;  // å_ω
    CMatrix defect;  // a_ω + a_ωᴴ
};

/// å_ω(z) = [ψ̊ − ½, ωφ̊; sψ̊, φ̊ − ½], φ̊ = (I − sω)⁻¹, ψ̊ = (I − ωs)⁻¹.
CMatrix eval_a_circ(const CoefficientMatrix& cm, const SchurParameter& om, Complex z);

/// The Hermitian weight Φ(t)ᴴ W(t)⁺ Φ(t) with Φ = [ψ, ψω; φ*ω*, φ*] at a
/// boundary point, W = [[I, w], [w*, I]] and W⁺ its pseudo-inverse.
CMatrix boundary_density(const CoefficientMatrix& cm, const SchurParameter& om, Complex t,
                         double pinv_tol = kDefaultTol);

/// å + åᴴ − ∫ P_z(t)·density(t) dm(t), midpoint rule with quad_n nodes.
CMatrix eval_defect(const CoefficientMatrix& cm, const SchurParameter& om, Complex z,
                    std::size_t quad_n = 4096, double pinv_tol = kDefaultTol);

/// a_ω(z) = ½[0, −ω(0); ω(0)*, 0] + å(z) − ½∫ (t + z)/(t − z)·density(t) dm(t),
/// together with å and the defect from the same quadrature.
SpectralEval eval_spectral(const CoefficientMatrix& cm, const SchurParameter& om, Complex z,
                           std::size_t quad_n = 4096, double pinv_tol = kDefaultTol);

/// max over samples of ‖[[I, s*], [s, I]] − [s₂*, 0; 0, s₁]·W₀⁺·[s₂, 0; 0, s₁*]‖_F,
/// W₀ = [[I, s₀], [s₀*, I]].
double check_property_2prime(const CoefficientMatrix& cm, std::span<const Complex> t_samples,
                             double pinv_tol = kDefaultTol);

struct RankIdentity {
    bool holds = true;
    std::size_t failures = 0; // samples where the identity fails
    Index lhs_rank_max = 0;   // max over samples of rank(I − SᴴS)
    Index rhs_rank_min = 0;   // min over samples of rank(I − s₀ᴴs₀) − dim N₁
};

/// rank(I − S*S) = rank(I − s₀*s₀) − dim N₁ at every sample; rank counts
/// eigenvalues above tol.
RankIdentity check_property_2doubleprime(const CoefficientMatrix& cm,
                                         std::span<const Complex> t_samples, double tol = 1e-6);

struct SingularMassGaps {
    double ratio2 = 0.0; // (1 + ωs)/(1 − ωs)
    double ratio1 = 0.0; // (1 + sω)/(1 − sω)
};

/// Relative gap between Re f(z) and the Poisson integral of Re f on the
/// circle, maximised over a few interior test points, for both Herglotz
/// functions. A gap signals a singular part in the representing measure.
/// Scalar N₁, N₂ only.
SingularMassGaps check_property_1prime(const CoefficientMatrix& cm, const SchurParameter& om,
                                       std::size_t quad_n = 4096);

/// max over samples of ‖I − S(t)ᴴS(t)‖₂.
double inner_defect(const CoefficientMatrix& cm, std::span<const Complex> t_samples);

} // namespace aip
