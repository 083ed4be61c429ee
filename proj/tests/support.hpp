#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance runner. Nothing here calls into the library's numerics except
// where a test compares against it.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "aip/problems.hpp"

namespace aip::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * static_cast<double>(g_() >> 11) * 0x1.0p-53;
    }
    Complex unimodular() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }
    Complex in_disk(double r_lo, double r_hi)
    {
        return std::polar(uniform(r_lo, r_hi), uniform(0.0, 2.0 * std::numbers::pi));
    }
    CMatrix matrix(Index rows, Index cols)
    {
        CMatrix m(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c)
                m(r, c) = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        return m;
    }
    /// Random contraction with spectral norm exactly `norm`.
    CMatrix contraction(Index rows, Index cols, double norm)
    {
        CMatrix m = matrix(rows, cols);
        Eigen::JacobiSVD<CMatrix> svd(m);
        return m * (norm / svd.singularValues()(0));
    }

private:
    std::mt19937_64 g_;
};

/// Schur function z ↦ 0.8·p(z)/Σ|p_k| for a random polynomial of degree ≤ 3.
struct PolySchur {
    std::vector<Complex> coeffs;
    Complex operator()(Complex z) const
    {
        Complex v(0.0), zk(1.0);
        for (Complex c : coeffs) {
            v += c * zk;
            zk *= z;
        }
        return v;
    }
};

inline PolySchur random_poly_schur(Rng& rng)
{
    PolySchur p;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        p.coeffs.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        total += std::abs(p.coeffs.back());
    }
    for (Complex& c : p.coeffs)
        c *= 0.8 / total;
    return p;
}

/// Nodes at radii in [0.2, 0.85] with angles spread over the circle;
/// values sampled from a strictly contractive polynomial.
inline NpData random_np(Rng& rng, int n)
{
    NpData d;
    const PolySchur w = random_poly_schur(rng);
    const double offset = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < n; ++k) {
        const double angle = offset + 2.0 * std::numbers::pi * (k + rng.uniform(0.1, 0.6)) / n;
        const Complex z = std::polar(rng.uniform(0.2, 0.85), angle);
        d.nodes.push_back(z);
        d.values.push_back(w(z));
    }
    return d;
}

inline BoundaryData random_boundary(Rng& rng)
{
    return BoundaryData{rng.unimodular(), rng.unimodular(), rng.uniform(0.2, 3.0)};
}

/// Pick matrix written out entry by entry.
inline CMatrix pick_matrix(const NpData& d)
{
    const auto n = static_cast<Index>(d.nodes.size());
    CMatrix p(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j) {
            const Complex wk = d.values[static_cast<std::size_t>(k)];
            const Complex wj = d.values[static_cast<std::size_t>(j)];
            const Complex zk = d.nodes[static_cast<std::size_t>(k)];
            const Complex zj = d.nodes[static_cast<std::size_t>(j)];
            p(k, j) = (1.0 - std::conj(wk) * wj) / (1.0 - std::conj(zk) * zj);
        }
    return p;
}

/// Truncated power series D + Σ_{k≥1} z^k C A^{k−1} B; valid for small |z|.
inline CMatrix char_fn_series(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d,
                              Complex z, int terms = 200)
{
    CMatrix out = d;
    CMatrix ak_b = b;
    Complex zk = z;
    for (int k = 1; k <= terms; ++k) {
        out += zk * (c * ak_b);
        ak_b = a * ak_b;
        zk *= z;
    }
    return out;
}

/// Direct O(n²) discrete Fourier coefficient of index k for samples on the
/// midpoint grid t_j = exp(2πi(j + ½)/n).
inline Complex naive_coefficient(const std::vector<Complex>& samples, int k)
{
    const auto n = samples.size();
    Complex acc(0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        acc += samples[j] * std::polar(1.0, -k * theta);
    }
    return acc / static_cast<double>(n);
}

/// Classical one-step Schur family at ζ = 0 with w(0) = w1:
/// w = (w1 + z·v)/(1 + conj(w1)·z·v).
inline Complex schur_step(Complex w1, Complex v, Complex z)
{
    return (w1 + z * v) / (1.0 + std::conj(w1) * z * v);
}

/// Inverse of schur_step: the constant v that produces w.
inline Complex schur_step_inverse(Complex w1, Complex w, Complex z)
{
    return (w - w1) / (z * (1.0 - std::conj(w1) * w));
}

} // namespace aip::testing
