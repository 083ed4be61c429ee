#pragma once

// Dense set {F^S x} in the de Branges–Rovnyak space of the coefficient
// matrix for Sarason data, the factorisation s₂ = θ·s̃₂, outer-function
// checks and the finite-basis version of the Sarason coefficient-matrix
// criterion.
//
// All routines sample on circle_nodes(n); L² pairings are node averages.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "aip/colligation.hpp"
#include "aip/problems.hpp"

namespace aip {

using MatrixFunction = std::function<CMatrix(Complex)>;

struct DenseSetSample {
    CVector x;                  // kernel-basis coefficients
    std::vector<Complex> grid;
    CMatrix fs_values;          // (E₂ ⊕ N₁ ⊕ E₁ ⊕ N₂) × grid
    double g0_mismatch = 0.0;   // special-case formula vs direct Fourier representation
    double model_mismatch = 0.0; // model-space form [[I, S], [S*, I]]·(x, 0, −P₊s̄₀x, 0) vs the above
    double hs_norm_sq = 0.0;    // ‖F^S x‖² in H^S
    double s2_analytic_mass = 0.0; // relative mass of s̄₂x at indices ≥ 0
};

/// Requires a Sarason-built problem and grid_n ≥ 64.
DenseSetSample eval_FS(const CoefficientMatrix& cm, const AipProblem& p, const CVector& x,
                       std::size_t grid_n = 1024);

struct InnerFactor {
    std::vector<Complex> quotient; // conj(θ)·f on the grid
    double wrong_mass = 0.0;       // relative mass at negative indices
    double modulus_excess = 0.0;   // max(|quotient| − 1, 0)
    double residual() const { return wrong_mass + modulus_excess; }
};

/// Divides boundary samples f by the unimodular samples θ.
InnerFactor divide_by_inner(std::span<const Complex> f, std::span<const Complex> theta);

/// s̃₂ = conj(θ)·s₂ on circle_nodes(grid_n), θ the Blaschke product of the zeros.
/// Scalar E₂ and N₂.
InnerFactor factor_s2_through_theta(const CoefficientMatrix& cm, const std::vector<Complex>& zeros,
                                    std::size_t grid_n = 1024);

/// | log|f(0)| − mean log|f(t_j)| | for samples on circle_nodes(n).
/// Throws DegenerateInput when a sample or f(0) is below 1e-12 in modulus.
double check_outer(std::span<const Complex> samples, Complex f_at_0);

struct SarasonNormalization {
    Complex alpha{1.0, 0.0}; // N₁ rescaling
    Complex beta{1.0, 0.0};  // N₂ rescaling
    double s1_at_0 = 0.0;
    double stilde2_at_0 = 0.0;
    double outer_mismatch = 0.0; // max_t |s₁ − s̃₂| after rescaling
    bool ok = false;             // both values at 0 above 1e-12
};

/// Unimodular rescaling of N₁ and N₂ making s₁(0) and s̃₂(0) positive.
SarasonNormalization normalize_sarason(const CoefficientMatrix& cm, const std::vector<Complex>& zeros,
                                       std::size_t grid_n = 1024);

/// S with row N₁ scaled by alpha and column N₂ scaled by beta.
MatrixFunction normalized_S(const CoefficientMatrix& cm, const SarasonNormalization& nz);

/// min over x in span{k_j} of ‖(P₋(s̄₁ − s̄₀x), P₋(s̄ − s̄₂x))‖² for a 2×2 S,
/// via normal equations with a pseudo-inverse at pinv_tol.
double indeterminacy_infimum(const MatrixFunction& s, const std::vector<Complex>& zeros,
                            std::size_t quad_n = 2048, double pinv_tol = 1e-10);

struct IndeterminacyCriterion {
    double infimum = 0.0;
    SarasonNormalization normalization;
};

/// Scalar indeterminate Sarason problems only (E₁ = E₂ = N₁ = N₂ = 1).
IndeterminacyCriterion check_indeterminacy_criterion(const CoefficientMatrix& cm, const AipProblem& p,
                               std::size_t quad_n = 2048);

/// For h₊ = t^k, k = 0..max_degree, the relative H^S-norm residual of the
/// vector [[I, S], [S*, I]]·(0, h₊, −P₊s̄₁h₊, −P₊s̄h₊) after projection onto
/// span{F^S k_j}. Scalar indeterminate Sarason problems only.
std::vector<double> denseness_residuals(const CoefficientMatrix& cm, const AipProblem& p,
                                        int max_degree = 3, std::size_t quad_n = 2048);

} // namespace aip
