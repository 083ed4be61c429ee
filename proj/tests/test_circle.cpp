#include <doctest.h>

#include <cmath>

#include "aip/circle.hpp"
#include "support.hpp"

using namespace aip;

TEST_CASE("nodes avoid t = 1 and lie on the circle")
{
    for (std::size_t n : {16u, 64u, 512u}) {
        const auto nodes = circle_nodes(n);
        REQUIRE(nodes.size() == n);
        for (Complex t : nodes) {
            CHECK(std::abs(std::abs(t) - 1.0) <= 1e-15);
            CHECK(std::abs(t - 1.0) > 1e-3);
        }
    }
}

TEST_CASE("fft coefficients agree with a direct sum")
{
    testing::Rng rng(21);
    const std::size_t n = 64;
    const auto nodes = circle_nodes(n);
    std::vector<Complex> samples(n);
    for (std::size_t j = 0; j < n; ++j)
        samples[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) + nodes[j] * nodes[j];
    const FourierSeries fs(samples);
    CHECK(fs.min_index() == -32);
    CHECK(fs.max_index() == 31);
    for (int k = fs.min_index(); k <= fs.max_index(); ++k)
        CHECK(std::abs(fs.at(k) - testing::naive_coefficient(samples, k)) <= 1e-13);
}

TEST_CASE("riesz projections split a trigonometric polynomial")
{
    const std::size_t n = 128;
    const auto nodes = circle_nodes(n);
    std::vector<Complex> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = 2.0 + 3.0 * nodes[j] + Complex(0, 1) / nodes[j] + 0.5 / (nodes[j] * nodes[j]);
    const auto plus = project_plus(f);
    const auto minus = project_minus(f);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(plus[j] - (2.0 + 3.0 * nodes[j])) <= 1e-13);
        CHECK(std::abs(minus[j] - (Complex(0, 1) / nodes[j] + 0.5 / (nodes[j] * nodes[j]))) <= 1e-13);
    }
    const FourierSeries fs(f);
    CHECK(fs.nonnegative_mass() == doctest::Approx(13.0));
    CHECK(fs.negative_mass() == doctest::Approx(1.25));
    CHECK(std::abs(circle_mean(f) - 2.0) <= 1e-14);
}

TEST_CASE("analytic rational function has negligible negative mass")
{
    const std::size_t n = 512;
    const auto nodes = circle_nodes(n);
    std::vector<Complex> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = 1.0 / (1.0 - 0.7 * nodes[j]);
    const FourierSeries fs(f);
    CHECK(fs.negative_mass() <= 1e-28 * fs.total_mass() + 1e-30);
}

TEST_CASE("disk points stay inside the radius")
{
    const auto pts = disk_points(200, 0.99);
    REQUIRE(pts.size() == 200);
    double rmax = 0.0;
    for (Complex z : pts)
        rmax = std::max(rmax, std::abs(z));
    CHECK(rmax <= 0.99);
    CHECK(rmax > 0.95);
}
