#pragma once

// Linear-fractional description of all solutions,
//
//     w = s₀ + s₂·ω·(I − s·ω)⁻¹·s₁,
//
// the associated map F: X → H^w and a verification report for a given
// Schur parameter ω: N₁ → N₂.

#include <cstddef>
#include <string>
#include <vector>

#include "aip/colligation.hpp"
#include "aip/problems.hpp"

namespace aip {

class SchurParameter {
public:
    enum class Kind { Constant, Realized };

    /// Constant contraction (σ_max ≤ 1 + 1e-12), dimN₂ × dimN₁.
    static SchurParameter constant(CMatrix value);
    static SchurParameter zero(Index dim_n2, Index dim_n1);
    /// Characteristic function of a unitary colligation with input N₁ and output N₂.
    static SchurParameter realized(UnitaryColligation col);
    /// Scalar degree-one inner function phase·(z − a)/(1 − conj(a)·z), |a| < 1.
    static SchurParameter blaschke_factor(Complex a, Complex phase);

    Kind kind() const { return kind_; }
    Index rows() const; // dim N₂
    Index cols() const; // dim N₁
    const CMatrix& value() const { return value_; }
    const UnitaryColligation& realization() const { return realization_; }

    CMatrix operator()(Complex z) const;

private:
    Kind kind_ = Kind::Constant;
    CMatrix value_;
    UnitaryColligation realization_;
};

/// w(z). Throws SingularResolvent when ‖(I − s(z)ω(z))⁻¹‖ > 1e12.
CMatrix lft_solution(const CoefficientMatrix& cm, const SchurParameter& om, Complex z);

struct PhiPsi {
    CMatrix phi;      // (I − sω)⁻¹s₁
    CMatrix psi;      // s₂(I − ωs)⁻¹
    CMatrix phi_circ; // (I − sω)⁻¹
    CMatrix psi_circ; // (I − ωs)⁻¹
};

PhiPsi phi_psi(const CoefficientMatrix& cm, const SchurParameter& om, Complex z);

/// Everything needed at one point: S blocks, ω, φ/ψ and w.
struct LftPoint {
    SBlocks s;
    CMatrix omega;
    PhiPsi pp;
    CMatrix w;
};
LftPoint eval_lft_point(const CoefficientMatrix& cm, const SchurParameter& om, Complex z);

struct FValue {
    CMatrix plus;  // E₂ × k
    CMatrix minus; // E₁ × k
};

/// F applied to the columns of x (dimX × k): the block row
/// [ψω, I, 0, 0; 0, 0, φ*ω*, I] applied to G₀[x] at t.
FValue eval_F(const CoefficientMatrix& cm, const SchurParameter& om, const CMatrix& x, Complex t);

/// [[I, w], [w*, I]].
CMatrix range_weight(const CMatrix& w);

/// ‖f‖² in the range norm of the weight: fᴴ·W⁺·f.
double range_norm_sq(const CMatrix& weight_pinv, const CVector& f);

struct VerifyOptions {
    std::size_t quad_n = 4096;
    double pinv_tol = 1e-10;
    std::size_t disk_points = 200;
    double disk_radius = 0.99;
    std::size_t identity_points = 64;
    double radial_step = 1e-4;
};

struct SolutionReport {
    double interp_residual = 0.0;
    double contractivity_margin = 0.0;
    double norm_equality_gap = 0.0;     // max_x |‖F x‖² − D(x,x)|
    double norm_equality_rel_gap = 0.0; // same, relative to D(x,x)
    double hardy_membership_residual = 0.0;
    double data_identity_residual = 0.0; // t·F·T₂x − F·T₁x vs the weight identity
    std::vector<double> norm_squared;    // ‖F e_j‖² per basis vector
    std::vector<double> form_diagonal;   // D(e_j, e_j)
    Complex w_at_zero;
    struct Metadata {
        std::string normalization;
        std::string weight_inverse = "Moore-Penrose pseudo-inverse";
        double pinv_tol = 1e-10;
        std::size_t quad_n = 0;
    } metadata;
};

/// Requires quad_n ≥ 256.
SolutionReport verify_solution(const AipProblem& p, const CoefficientMatrix& cm,
                               const SchurParameter& om, const VerifyOptions& opts = {});

/// Radial limit of w at t0 by Richardson extrapolation of w(r₁t0), w(r₂t0)
/// with r₁ = 1 − step, r₂ = 1 − 2·step.
CMatrix radial_limit(const CoefficientMatrix& cm, const SchurParameter& om, Complex t0,
                     double step = 1e-4);

} // namespace aip
