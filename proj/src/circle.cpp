#include "aip/circle.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "aip/errors.hpp"

namespace aip {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::vector<Complex> dft(std::span<const Complex> in, int sign)
{
    const int n = static_cast<int>(in.size());
    std::vector<Complex> src(in.begin(), in.end());
    std::vector<Complex> out(in.size());
    auto* s = reinterpret_cast<fftw_complex*>(src.data());
    auto* d = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, s, d, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

// Keeps coefficients with k ≥ 0 (plus = true) or k < 0 and resamples.
std::vector<Complex> project(std::span<const Complex> samples, bool plus)
{
    FourierSeries series(samples);
    const auto n = samples.size();
    std::vector<Complex> spectrum(n, Complex(0.0));
    const double half = std::numbers::pi / static_cast<double>(n);
    for (int k = series.min_index(); k <= series.max_index(); ++k) {
        if ((k >= 0) == plus)
            spectrum[static_cast<std::size_t>(wrap(k, static_cast<int>(n)))]
                = series.at(k) * std::polar(1.0, half * k);
    }
    return dft(spectrum, FFTW_BACKWARD);
}

} // namespace

std::vector<Complex> circle_nodes(std::size_t n)
{
    std::vector<Complex> t(n);
    for (std::size_t j = 0; j < n; ++j)
        t[j] = std::polar(1.0, 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5)
                                   / static_cast<double>(n));
    return t;
}

FourierSeries::FourierSeries(std::span<const Complex> samples)
{
    const int n = static_cast<int>(samples.size());
    if (n < 2)
        throw AipError(ErrorKind::InvalidInput, "need at least two circle samples");
    const std::vector<Complex> raw = dft(samples, FFTW_FORWARD);
    coeffs_.resize(samples.size());
    // Nodes are shifted by half a step: c_k = (1/n) Σ f_j e^{-2πik(j+½)/n}.
    const double half = std::numbers::pi / n;
    for (int k = -n / 2; k < n - n / 2; ++k) {
        coeffs_[static_cast<std::size_t>(k + n / 2)]
            = raw[static_cast<std::size_t>(wrap(k, n))] * std::polar(1.0, -half * k) / double(n);
    }
}

Complex FourierSeries::at(int k) const
{
    if (k < min_index() || k > max_index())
        return Complex(0.0);
    return coeffs_[static_cast<std::size_t>(k - min_index())];
}

double FourierSeries::negative_mass() const
{
    double m = 0.0;
    for (int k = min_index(); k < 0; ++k)
        m += std::norm(at(k));
    return m;
}

double FourierSeries::nonnegative_mass() const
{
    double m = 0.0;
    for (int k = 0; k <= max_index(); ++k)
        m += std::norm(at(k));
    return m;
}

double FourierSeries::total_mass() const { return negative_mass() + nonnegative_mass(); }

std::vector<Complex> project_plus(std::span<const Complex> samples)
{
    return project(samples, true);
}

std::vector<Complex> project_minus(std::span<const Complex> samples)
{
    return project(samples, false);
}

Complex circle_mean(std::span<const Complex> samples)
{
    Complex s(0.0);
    for (const Complex& v : samples)
        s += v;
    return samples.empty() ? s : s / static_cast<double>(samples.size());
}

std::vector<Complex> disk_points(std::size_t n, double radius)
{
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Complex> pts(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(n));
        pts[k] = std::polar(r, golden * static_cast<double>(k));
    }
    return pts;
}

} // namespace aip
