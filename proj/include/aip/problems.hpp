#pragma once

// Finite-dimensional interpolation data (X = C^n) and builders for the
// Nevanlinna–Pick, boundary (Carathéodory–Julia) and scalar Sarason problems.
//
// Conventions: D is the matrix of the form, D(x, y) = yᴴ·D·x; M1 is
// dimE1×dimX and M2 is dimE2×dimX. The data must satisfy
//
//     T2ᴴ·D·T2 − T1ᴴ·D·T1 = M1ᴴ·M1 − M2ᴴ·M2.

#include <variant>
#include <vector>

#include "aip/linalg.hpp"

namespace aip {

struct NpData {
    std::vector<Complex> nodes;  // |ζ_k| < 1, pairwise distinct
    std::vector<Complex> values; // w(ζ_k) = w_k
};

struct BoundaryData {
    Complex t0{1.0, 0.0}; // |t0| = 1
    Complex w0{1.0, 0.0}; // |w0| = 1
    double bound = 0.0;   // D_{w,t0} ≤ bound
};

/// K_θ for the finite Blaschke product θ with the given (distinct) zeros is
/// represented in the kernel basis k_j(t) = 1/(1 − conj(ζ_j)·t). `wstar` is
/// the matrix of W* acting on kernel-basis coefficients.
struct SarasonData {
    std::vector<Complex> zeros;
    CMatrix wstar;
};

using ProblemOrigin = std::variant<std::monostate, NpData, BoundaryData, SarasonData>;

struct AipProblem {
    CMatrix D;
    CMatrix T1;
    CMatrix T2;
    CMatrix M1;
    CMatrix M2;
    bool special_case = false;
    ProblemOrigin origin; // monostate for hand-built data

    Index dim_x() const { return D.rows(); }
    Index dim_e1() const { return M1.rows(); }
    Index dim_e2() const { return M2.rows(); }

    const NpData* np() const { return std::get_if<NpData>(&origin); }
    const BoundaryData* boundary() const { return std::get_if<BoundaryData>(&origin); }
    const SarasonData* sarason() const { return std::get_if<SarasonData>(&origin); }
};

/// ‖T2ᴴDT2 − T1ᴴDT1 − M1ᴴM1 + M2ᴴM2‖_F. Throws DimensionMismatch on bad shapes.
double check_fundamental_identity(const AipProblem& p);

/// Validates hand-built data (shapes, finiteness, D Hermitian PSD and the
/// fundamental identity, both at 1e-10 relative) and returns it unchanged.
AipProblem make_problem(CMatrix d, CMatrix t1, CMatrix t2, CMatrix m1, CMatrix m2,
                        bool special_case = false);

/// Pick-matrix data. Throws NotPsd when the Pick matrix is indefinite,
/// i.e. the interpolation problem has no Schur-class solution.
AipProblem build_np(const NpData& d);

AipProblem build_boundary(const BoundaryData& d);

/// Throws NotContractive if W* is not a contraction in the K_θ norm and
/// InvalidInput if it does not commute with T*_θ.
AipProblem build_sarason(const SarasonData& d);

/// Sarason data with W* k_j = conj(w_j)·k_j, whose solution set coincides
/// with that of the Pick problem on the same nodes.
SarasonData sarason_from_np(const NpData& d);

/// Gram matrix of the kernel basis: G(k, j) = ⟨k_j, k_k⟩ = 1/(1 − conj(ζ_j)ζ_k).
CMatrix kernel_gram(const std::vector<Complex>& zeros);

/// (k_1(t), ..., k_n(t)).
CVector kernel_values(const std::vector<Complex>& zeros, Complex t);

/// θ(z) = Π (z − ζ_j)/(1 − conj(ζ_j)·z).
Complex blaschke_product(const std::vector<Complex>& zeros, Complex z);

} // namespace aip
