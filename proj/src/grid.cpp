#include "causal/grid.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

namespace causal {

namespace {
std::atomic<bool> g_warnings_enabled{true};
}

void warn(const std::string& message)
{
    if (g_warnings_enabled.load()) std::clog << "causal: warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings_enabled.store(enabled); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------

TimeGrid TimeGrid::centered(double dt, std::size_t count)
{
    TimeGrid g{-static_cast<double>(count / 2) * dt, dt, count};
    g.validate();
    return g;
}

void TimeGrid::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time grid: dt must be positive and finite");
    if (count < 2) throw Error("time grid: need at least 2 samples");
    if (!std::isfinite(t0)) throw Error("time grid: t0 must be finite");
}

double TimeGrid::domega() const { return 2.0 * pi / (static_cast<double>(count) * dt); }

double TimeGrid::nyquist() const { return pi / dt; }

std::size_t TimeGrid::nearest_index(double t) const
{
    const double k = std::round((t - t0) / dt);
    if (k <= 0.0) return 0;
    if (k >= static_cast<double>(count - 1)) return count - 1;
    return static_cast<std::size_t>(k);
}

FrequencyGrid TimeGrid::frequencies() const { return FrequencyGrid::two_sided(domega(), count); }

// ---------------------------------------------------------------------------

FrequencyGrid::FrequencyGrid(double omega0, double domega, std::size_t count, Sidedness sidedness)
    : omega0_(omega0), domega_(domega), count_(count), sidedness_(sidedness)
{
    validate();
}

FrequencyGrid FrequencyGrid::two_sided(double domega, std::size_t count)
{
    return FrequencyGrid(-static_cast<double>(count / 2) * domega, domega, count, Sidedness::two_sided);
}

FrequencyGrid FrequencyGrid::positive(double domega, std::size_t count)
{
    return FrequencyGrid(0.0, domega, count, Sidedness::one_sided_positive);
}

void FrequencyGrid::validate() const
{
    if (!(domega_ > 0.0) || !std::isfinite(domega_))
        throw Error("frequency grid: domega must be positive and finite");
    if (count_ < 2) throw Error("frequency grid: need at least 2 bins");
    if (sidedness_ == Sidedness::two_sided) {
        const double expected = -static_cast<double>(count_ / 2) * domega_;
        if (std::abs(omega0_ - expected) > 1e-9 * domega_) {
            std::ostringstream os;
            os << "frequency grid: two-sided grid must start at " << expected << ", got " << omega0_;
            throw Error(os.str());
        }
    } else if (omega0_ < 0.0) {
        throw Error("frequency grid: one-sided grid must start at omega >= 0");
    }
}

std::size_t FrequencyGrid::zero_index() const
{
    if (sidedness_ != Sidedness::two_sided) return 0;
    return count_ / 2;
}

std::size_t FrequencyGrid::mirror(std::size_t j) const
{
    if (sidedness_ != Sidedness::two_sided) return npos;
    const long m = bin(j);
    const long h = static_cast<long>(zero_index());
    const long mirrored = -m + h;
    if (mirrored < 0 || mirrored >= static_cast<long>(count_)) return npos;
    return static_cast<std::size_t>(mirrored);
}

double FrequencyGrid::dt() const { return 2.0 * pi / (static_cast<double>(count_) * domega_); }

bool FrequencyGrid::same_as(const FrequencyGrid& other, double rel_tol) const
{
    return count_ == other.count_ && sidedness_ == other.sidedness_ &&
           std::abs(domega_ - other.domega_) <= rel_tol * domega_ &&
           std::abs(omega0_ - other.omega0_) <= rel_tol * std::max(1.0, std::abs(omega0_)) * domega_;
}

// ---------------------------------------------------------------------------

void SampledSignal::validate() const
{
    grid.validate();
    if (values.size() != grid.count) throw Error("signal: value count does not match grid");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            std::ostringstream os;
            os << "signal: non-finite sample at index " << k << " (t = " << grid.time(k) << ")";
            throw Error(os.str());
        }
    }
}

double SampledSignal::peak() const
{
    double p = 0.0;
    for (double v : values) p = std::max(p, std::abs(v));
    return p;
}

void SampledSpectrum::validate() const
{
    grid.validate();
    if (values.size() != grid.count()) throw Error("spectrum: value count does not match grid");
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag())) {
            std::ostringstream os;
            os << "spectrum: non-finite value at bin " << j << " (omega = " << grid.omega(j) << ")";
            throw Error(os.str());
        }
    }
    if (hermitian) {
        const auto [defect, bin] = hermitian_defect();
        if (defect > 1e-12) {
            std::ostringstream os;
            os << "spectrum: tagged hermitian but bin " << bin << " (omega = " << grid.omega(bin)
               << ") violates G(-w) = conj(G(w)) by " << defect << " relative";
            throw Error(os.str());
        }
    }
}

std::pair<double, std::size_t> SampledSpectrum::hermitian_defect() const
{
    if (!grid.is_two_sided()) throw Error("spectrum: hermitian symmetry needs a two-sided grid");
    double scale = 0.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {0.0, grid.zero_index()};
    double worst = 0.0;
    std::size_t worst_bin = grid.zero_index();
    for (std::size_t j = 0; j < values.size(); ++j) {
        const std::size_t m = grid.mirror(j);
        if (m == FrequencyGrid::npos) continue;
        const double d = std::abs(values[m] - std::conj(values[j])) / scale;
        if (d > worst) {
            worst = d;
            worst_bin = j;
        }
    }
    return {worst, worst_bin};
}

void SampledFunction::validate() const
{
    grid.validate();
    if (values.size() != grid.count()) throw Error("sampled function: value count does not match grid");
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j])) {
            std::ostringstream os;
            os << "sampled function: non-finite value at bin " << j << " (omega = " << grid.omega(j) << ")";
            throw Error(os.str());
        }
    }
}

SampledFunction real_part(const SampledSpectrum& s)
{
    SampledFunction f{s.grid, std::vector<double>(s.values.size())};
    for (std::size_t j = 0; j < s.values.size(); ++j) f.values[j] = s.values[j].real();
    return f;
}

SampledFunction imag_part(const SampledSpectrum& s)
{
    SampledFunction f{s.grid, std::vector<double>(s.values.size())};
    for (std::size_t j = 0; j < s.values.size(); ++j) f.values[j] = s.values[j].imag();
    return f;
}

double relative_l2(const SampledFunction& a, const SampledFunction& b, double lo, double hi)
{
    if (a.values.size() != b.values.size() || !a.grid.same_as(b.grid))
        throw Error("relative_l2: grids differ");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        const double w = a.grid.omega(j);
        if (w < lo || w > hi) continue;
        const double d = a.values[j] - b.values[j];
        num += d * d;
        den += b.values[j] * b.values[j];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

std::pair<double, double> interior_band(const FrequencyGrid& grid)
{
    const double lo = grid.omega(0);
    const double hi = grid.max_omega();
    const double quarter = 0.25 * (hi - lo);
    return {lo + quarter, hi - quarter};
}

double relative_l2_interior(const SampledFunction& a, const SampledFunction& b)
{
    const auto [lo, hi] = interior_band(a.grid);
    return relative_l2(a, b, lo, hi);
}

}  // namespace causal
