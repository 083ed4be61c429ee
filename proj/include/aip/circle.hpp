#pragma once

// Sampling on the unit circle: midpoint quadrature nodes, Fourier
// coefficients of sampled boundary functions, and the Riesz projections
// P₊ / P₋ used for Hardy-space membership tests.

#include <cstddef>
#include <span>
#include <vector>

#include "aip/linalg.hpp"

namespace aip {

/// t_j = exp(2πi(j + ½)/n), j = 0..n-1. The half-step offset keeps the
/// point t = 1 off the grid; every node carries the weight 1/n.
std::vector<Complex> circle_nodes(std::size_t n);

/// Coefficients c_k of Σ c_k t^k for k in [-n/2, n/2), recovered from samples
/// at circle_nodes(n).
class FourierSeries {
public:
    explicit FourierSeries(std::span<const Complex> samples);

    int min_index() const { return -static_cast<int>(coeffs_.size() / 2); }
    int max_index() const { return min_index() + static_cast<int>(coeffs_.size()) - 1; }
    Complex at(int k) const;

    /// Σ_{k<0} |c_k|²
    double negative_mass() const;
    /// Σ_{k≥0} |c_k|²
    double nonnegative_mass() const;
    double total_mass() const;

private:
    std::vector<Complex> coeffs_;
};

/// Samples of P₊f (indices k ≥ 0 kept) on the same nodes.
std::vector<Complex> project_plus(std::span<const Complex> samples);
/// Samples of P₋f (indices k < 0 kept) on the same nodes.
std::vector<Complex> project_minus(std::span<const Complex> samples);

/// Mean of f over the nodes, i.e. ∫ f dm by the midpoint rule.
Complex circle_mean(std::span<const Complex> samples);

/// n deterministic points filling the closed disk of the given radius
/// (sunflower / golden-angle spiral, area-uniform).
std::vector<Complex> disk_points(std::size_t n, double radius);

} // namespace aip
