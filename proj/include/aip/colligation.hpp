#pragma once

// Gram space H₀ of the data, the isometry V it induces, the universal unitary
// colligation A₀ extending V, and evaluators for characteristic functions and
// Fourier representations.
//
// Coordinate layout of A₀ (rows ← columns):
//
//     [ H₀ ]      [ A₀  B₀ ] [ H₀ ]
//     [ E₂ ]  ←   [        ] [ E₁ ]
//     [ N₁ ]      [ C₀  D₀ ] [ N₂ ]
//
// so S(z) = D₀ + z·C₀(I − zA₀)⁻¹B₀ splits as [[s₀, s₂], [s₁, s]] with
// s₀: E₁→E₂, s₂: N₂→E₂, s₁: E₁→N₁, s: N₂→N₁.

#include <string>
#include <vector>

#include "aip/linalg.hpp"
#include "aip/problems.hpp"

namespace aip {

/// Coordinates of H₀ = X/ker D: [x] = embed·x with embedᴴ·embed = D.
struct GramSpace {
    Index dim = 0;
    CMatrix embed; // dim × dimX
};

GramSpace build_gram_space(const AipProblem& p, double tol = kDefaultTol);

/// V maps span{([T₁x], M₁x)} ⊂ H₀⊕E₁ onto span{([T₂x], M₂x)} ⊂ H₀⊕E₂.
struct DataIsometry {
    CMatrix v;              // (dimH₀+dimE₂) × (dimH₀+dimE₁), zero on d_V^⊥
    Subspace d_v;           // domain
    Subspace delta_v;       // range; basis = v·d_v.basis
    CMatrix generators_in;  // columns ([T₁e_j], M₁e_j)
    CMatrix generators_out; // columns ([T₂e_j], M₂e_j)
    double fit_residual = 0.0;
};

/// Throws IllDefined when the generator images cannot be matched by an
/// isometry (residual above 1e-8), which signals inconsistent data.
DataIsometry build_isometry(const AipProblem& p, const GramSpace& g, double tol = kDefaultTol);

class UnitaryColligation {
public:
    UnitaryColligation() = default;

    /// Validates unitarity of [[A, B], [C, D]] at 1e-10.
    static UnitaryColligation from_blocks(CMatrix a, CMatrix b, CMatrix c, CMatrix d);
    /// Splits a square unitary with the given state and input dimensions.
    static UnitaryColligation from_matrix(const CMatrix& full, Index dim_state, Index dim_in);

    const CMatrix& a() const { return a_; }
    const CMatrix& b() const { return b_; }
    const CMatrix& c() const { return c_; }
    const CMatrix& d() const { return d_; }
    Index dim_state() const { return a_.rows(); }
    Index dim_in() const { return b_.cols(); }
    Index dim_out() const { return c_.rows(); }
    CMatrix full() const;
    const std::vector<Complex>& state_spectrum() const { return spectrum_; }

    /// Solves (I − zA)·X = rhs. Throws SingularResolvent when 1/z lies
    /// within 1e-8 of the spectrum of A.
    CMatrix resolvent_solve(Complex z, const CMatrix& rhs) const;

private:
    CMatrix a_, b_, c_, d_;
    std::vector<Complex> spectrum_;
};

/// θ(z) = D + z·C(I − zA)⁻¹B.
CMatrix eval_char_fn(const UnitaryColligation& col, Complex z);

struct SBlocks {
    CMatrix s0; // E₁ → E₂
    CMatrix s2; // N₂ → E₂
    CMatrix s1; // E₁ → N₁
    CMatrix s;  // N₂ → N₁
};

class CoefficientMatrix {
public:
    UnitaryColligation colligation;
    GramSpace gram;
    DataIsometry isometry;
    Index dim_e1 = 0;
    Index dim_e2 = 0;
    Index dim_n1 = 0;
    Index dim_n2 = 0;
    std::string normalization;

    Index dim_h0() const { return gram.dim; }
    SBlocks split(const CMatrix& s_value) const;
};

/// Builds A₀ with u₁ = u₂ = I in the coordinates of the deterministic
/// complement bases of d_V and Δ_V. Verifies s(0) = 0.
CoefficientMatrix build_universal_colligation(const AipProblem& p, const GramSpace& g,
                                              double tol = kDefaultTol);

/// Convenience: Gram space plus universal colligation.
CoefficientMatrix build_coefficient_matrix(const AipProblem& p, double tol = kDefaultTol);

CMatrix eval_S(const CoefficientMatrix& cm, Complex z);
SBlocks eval_S_blocks(const CoefficientMatrix& cm, Complex z);

struct FourierPair {
    CMatrix plus;  // (dimE₂+dimN₁) × k
    CMatrix minus; // (dimE₁+dimN₂) × k
};

/// Fourier representation of H₀ applied to the columns of h0:
/// plus = C₀(I − zA₀)⁻¹h₀, minus = conj(z)·B₀ᴴ(I − conj(z)A₀ᴴ)⁻¹h₀.
FourierPair eval_fourier_G0(const CoefficientMatrix& cm, const CMatrix& h0, Complex z);

} // namespace aip
