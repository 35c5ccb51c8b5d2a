#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace causal {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

class FrequencyGrid;

// Uniform sampling in time: t_k = t0 + k*dt for k in [0, count).
struct TimeGrid
{
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t count = 0;

    // Window with tau = 0 at index count/2, so negative times are resolved.
    static TimeGrid centered(double dt, std::size_t count);

    void validate() const;
    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    double duration() const { return static_cast<double>(count) * dt; }
    double domega() const;
    double nyquist() const;
    // Index of the sample closest to t (clamped to the grid).
    std::size_t nearest_index(double t) const;

    FrequencyGrid frequencies() const;
};

enum class Sidedness { two_sided, one_sided_positive };

// Uniform frequency sampling omega_j = omega0 + j*domega.
//
// Two-sided grids start at -h*domega with h = count/2, so omega = 0 sits at
// index h. For even counts the first bin (-Nyquist) has no partner inside
// the grid; it aliases onto +Nyquist and is treated as self-conjugate.
class FrequencyGrid
{
public:
    FrequencyGrid() = default;
    FrequencyGrid(double omega0, double domega, std::size_t count, Sidedness sidedness);

    static FrequencyGrid two_sided(double domega, std::size_t count);
    static FrequencyGrid positive(double domega, std::size_t count);

    double omega0() const { return omega0_; }
    double domega() const { return domega_; }
    std::size_t count() const { return count_; }
    Sidedness sidedness() const { return sidedness_; }
    bool is_two_sided() const { return sidedness_ == Sidedness::two_sided; }

    double omega(std::size_t j) const { return omega0_ + static_cast<double>(j) * domega_; }
    double max_omega() const { return omega(count_ - 1); }

    // Two-sided only: index of omega = 0 and signed bin number of index j.
    std::size_t zero_index() const;
    long bin(std::size_t j) const { return static_cast<long>(j) - static_cast<long>(zero_index()); }
    // Index of the bin mirroring j about zero, or npos for the unpaired bin.
    std::size_t mirror(std::size_t j) const;

    // Time sampling that pairs with this (two-sided) grid under the DFT.
    double dt() const;

    void validate() const;
    bool same_as(const FrequencyGrid& other, double rel_tol = 1e-12) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double omega0_ = 0.0;
    double domega_ = 1.0;
    std::size_t count_ = 0;
    Sidedness sidedness_ = Sidedness::two_sided;
};

struct SampledSignal
{
    TimeGrid grid;
    std::vector<double> values;

    void validate() const;
    double peak() const;
};

struct SampledSpectrum
{
    FrequencyGrid grid;
    std::vector<complex> values;
    // Time of sample 0 in the paired time window. Forward transforms record
    // the signal's t0 here so the inverse lands on the same window.
    double time_origin = 0.0;
    bool hermitian = false;

    void validate() const;
    // Largest |G(-w) - conj(G(w))| relative to max |G|, with its bin index.
    std::pair<double, std::size_t> hermitian_defect() const;
};

// Real samples on a frequency grid (one part of a spectrum, Im n, Re n, ...).
struct SampledFunction
{
    FrequencyGrid grid;
    std::vector<double> values;

    void validate() const;
};

// Samples fn on a two-sided grid, attaching a centered time window.
template <typename Fn>
SampledSpectrum sample_spectrum(const FrequencyGrid& grid, Fn&& fn)
{
    SampledSpectrum s;
    s.grid = grid;
    s.values.resize(grid.count());
    for (std::size_t j = 0; j < grid.count(); ++j) s.values[j] = fn(grid.omega(j));
    if (grid.is_two_sided()) s.time_origin = -static_cast<double>(grid.zero_index()) * grid.dt();
    return s;
}

template <typename Fn>
SampledFunction sample_function(const FrequencyGrid& grid, Fn&& fn)
{
    SampledFunction s;
    s.grid = grid;
    s.values.resize(grid.count());
    for (std::size_t j = 0; j < grid.count(); ++j) s.values[j] = fn(grid.omega(j));
    return s;
}

SampledFunction real_part(const SampledSpectrum& s);
SampledFunction imag_part(const SampledSpectrum& s);

// Relative L2 distance ||a - b|| / ||b|| over bins with lo <= omega <= hi.
double relative_l2(const SampledFunction& a, const SampledFunction& b, double lo, double hi);
// Same, over the central half of the band.
double relative_l2_interior(const SampledFunction& a, const SampledFunction& b);
// Frequency bounds of the central half of the band.
std::pair<double, double> interior_band(const FrequencyGrid& grid);

bool is_power_of_two(std::size_t n);

}  // namespace causal
