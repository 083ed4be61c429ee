#pragma once

// Dense complex linear algebra used throughout the library. Everything here
// is a pure function of its inputs and produces deterministic output:
// eigenvector phases, basis orderings and complement bases follow fixed
// tie-breaking rules so that downstream coefficient matrices are
// reproducible bit for bit.

#include <complex>

#include <Eigen/Dense>

namespace aip {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-10;

/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

/// Largest singular value (0 for empty matrices).
double spectral_norm(const CMatrix& m);

/// max(‖UᴴU − I‖, ‖UUᴴ − I‖) in the Frobenius norm.
double unitarity_defect(const CMatrix& u);

/// Orthonormal basis of a subspace of C^ambient_dim, stored as columns.
struct Subspace {
    Index ambient_dim = 0;
    CMatrix basis;

    Index dim() const { return basis.cols(); }
    CMatrix projector() const { return basis * basis.adjoint(); }
};

/// Validates orthonormality (1e-10) and wraps `basis` as a Subspace.
Subspace make_subspace(const CMatrix& basis);

/// Empty subspace of C^ambient_dim.
Subspace zero_subspace(Index ambient_dim);

struct PsdFactor {
    Index rank = 0;
    CMatrix factor; // n×rank, G ≈ factor·factorᴴ
};

/// Rank-revealing factorisation G = L·Lᴴ of a Hermitian PSD matrix.
/// Columns of L are √λ·v for eigenpairs with λ > tol·‖G‖, in descending
/// eigenvalue order; equal eigenvalues are ordered by the index of the
/// eigenvector's largest-magnitude coordinate, and that coordinate is made
/// real positive.
PsdFactor hermitian_psd_decompose(const CMatrix& g, double tol = kDefaultTol);

/// Orthonormal basis of the orthogonal complement, built by pivoted
/// Gram–Schmidt of the identity columns against `s.basis`. The pivot is the
/// column with the largest residual norm, lowest index on ties.
Subspace orthonormal_complement(const Subspace& s);

/// Thin SVD truncated at tol·σ_max. Column phases are fixed so that the
/// largest-magnitude entry of every left singular vector is real positive.
struct TruncatedSvd {
    CMatrix u;
    RVector sigma;
    CMatrix v;
    Index rank() const { return sigma.size(); }
};
TruncatedSvd truncated_svd(const CMatrix& m, double tol = kDefaultTol);

/// Orthonormal basis of the column space of m.
Subspace range_subspace(const CMatrix& m, double tol = kDefaultTol);

/// Moore–Penrose pseudo-inverse; singular values below tol·σ_max are dropped.
CMatrix pinv(const CMatrix& m, double tol = kDefaultTol);

/// Extends an isometry V: dom → ran (dom ⊂ C^m1, ran ⊂ C^m2) to a unitary
///
///     [ C^m1 ]      [ C^m2 ]
///     [  N2  ]  →   [  N1  ]
///
/// that acts as V on dom, as u1 (in complement coordinates) from dom^⊥ into
/// N1, and as u2ᴴ from N2 onto ran^⊥. N1 and N2 carry the coordinates of
/// orthonormal_complement(dom) and orthonormal_complement(ran).
CMatrix complete_isometry_to_unitary(const CMatrix& v, const Subspace& dom, const Subspace& ran,
                                     const CMatrix& u1, const CMatrix& u2);

} // namespace aip
