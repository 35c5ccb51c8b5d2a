#include "causal/spectral.hpp"

#include "causal/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

namespace causal {

namespace {

// FFTW's planner is not thread-safe; execution on private buffers is.
std::mutex g_plan_mutex;

void note_size(std::size_t n)
{
    static std::mutex m;
    static std::set<std::size_t> seen;
    if (is_power_of_two(n)) return;
    std::lock_guard<std::mutex> lock(m);
    if (seen.insert(n).second) {
        std::ostringstream os;
        os << "grid size " << n << " is not a power of two; transforms will be slower";
        warn(os.str());
    }
}

long long wrap(long long x, long long n)
{
    const long long r = x % n;
    return r < 0 ? r + n : r;
}

// exp(2 pi i * m * q / n). When q is an integer the angle is reduced
// exactly so grid-aligned shifts carry no phase rounding.
complex turn(long long m, double q, std::size_t n)
{
    const double qr = std::round(q);
    const long long nn = static_cast<long long>(n);
    double frac;
    if (std::abs(q - qr) <= 1e-9 * std::max(1.0, std::abs(q))) {
        frac = static_cast<double>(wrap(m * static_cast<long long>(qr), nn)) / static_cast<double>(n);
    } else {
        const double x = static_cast<double>(m) * q / static_cast<double>(n);
        frac = x - std::floor(x);
    }
    return std::polar(1.0, 2.0 * pi * frac);
}

}  // namespace

namespace detail {

std::vector<complex> dft(const std::vector<complex>& in, int sign)
{
    const std::size_t n = in.size();
    if (n == 0) return {};
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (buf == nullptr) throw Error("fft: allocation failed");
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = in[i].real();
        buf[i][1] = in[i].imag();
    }
    fftw_execute(plan);
    std::vector<complex> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = complex(buf[i][0], buf[i][1]);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return out;
}

std::vector<complex> to_time(const FrequencyGrid& grid, const std::vector<complex>& values, double t0)
{
    if (!grid.is_two_sided()) throw Error("inverse transform: spectrum must be two-sided");
    const std::size_t n = grid.count();
    if (values.size() != n) throw Error("inverse transform: value count does not match grid");
    note_size(n);
    const double dt = grid.dt();
    const double q = t0 / dt;
    const long long h = static_cast<long long>(grid.zero_index());
    std::vector<complex> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = values[j] * turn(-grid.bin(j), q, n);
    auto out = dft(v, -1);
    const double scale = grid.domega() / (2.0 * pi);
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale * turn(h * static_cast<long long>(k), 1.0, n);
    return out;
}

std::vector<complex> to_frequency(const TimeGrid& grid, const std::vector<complex>& values)
{
    const std::size_t n = grid.count;
    if (values.size() != n) throw Error("forward transform: value count does not match grid");
    note_size(n);
    const FrequencyGrid fg = grid.frequencies();
    const long long h = static_cast<long long>(fg.zero_index());
    std::vector<complex> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = values[k] * turn(-h * static_cast<long long>(k), 1.0, n);
    auto out = dft(u, +1);
    const double q = grid.t0 / grid.dt;
    for (std::size_t j = 0; j < n; ++j) out[j] *= grid.dt * turn(fg.bin(j), q, n);
    return out;
}

std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<complex> correlate(const std::vector<complex>& x, const std::function<complex(long)>& kernel)
{
    const std::size_t n = x.size();
    if (n == 0) return {};
    const std::size_t len = next_power_of_two(2 * n);
    std::vector<complex> a(len, complex(0.0, 0.0));
    std::vector<complex> b(len, complex(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k];
    // y_j = sum_k x_k kernel(k - j) is a convolution with kernel(-e).
    const long span = static_cast<long>(n) - 1;
    for (long e = -span; e <= span; ++e) b[static_cast<std::size_t>(wrap(e, static_cast<long long>(len)))] = kernel(-e);
    const auto fa = dft(a, -1);
    const auto fb = dft(b, -1);
    for (std::size_t i = 0; i < len; ++i) a[i] = fa[i] * fb[i];
    auto c = dft(a, +1);
    std::vector<complex> y(n);
    const double inv = 1.0 / static_cast<double>(len);
    for (std::size_t j = 0; j < n; ++j) y[j] = c[j] * inv;
    return y;
}

}  // namespace detail

SampledSpectrum forward_transform(const SampledSignal& signal)
{
    signal.validate();
    std::vector<complex> g(signal.values.begin(), signal.values.end());
    SampledSpectrum s;
    s.grid = signal.grid.frequencies();
    s.values = detail::to_frequency(signal.grid, g);
    s.time_origin = signal.grid.t0;
    s.hermitian = true;
    return s;
}

SampledSignal inverse_transform(const SampledSpectrum& spectrum)
{
    if (!spectrum.grid.is_two_sided()) throw Error("inverse transform: spectrum must be two-sided");
    const bool tagged = spectrum.hermitian;
    SampledSpectrum checked = spectrum;
    checked.hermitian = false;
    checked.validate();
    const auto [defect, bin] = spectrum.hermitian_defect();
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "inverse transform: spectrum is not Hermitian; worst bin " << bin << " (omega = "
           << spectrum.grid.omega(bin) << ") has |G(-w) - conj(G(w))| = " << defect << " relative to max |G|";
        if (tagged) os << " despite the hermitian tag";
        throw Error(os.str());
    }
    const auto g = detail::to_time(spectrum.grid, spectrum.values, spectrum.time_origin);
    SampledSignal out;
    out.grid = TimeGrid{spectrum.time_origin, spectrum.grid.dt(), spectrum.grid.count()};
    out.values.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out.values[k] = g[k].real();
    return out;
}

SampledSpectrum hermitian_extend(const SampledSpectrum& positive_half, ExtendMode mode)
{
    const FrequencyGrid& pg = positive_half.grid;
    if (pg.sidedness() != Sidedness::one_sided_positive)
        throw Error("hermitian_extend: input must be one-sided positive");
    if (std::abs(pg.omega0()) > 1e-12 * pg.domega())
        throw Error("hermitian_extend: one-sided grid must start at omega = 0");
    SampledSpectrum in = positive_half;
    in.hermitian = false;
    in.validate();

    const complex z = in.values.front();
    if (std::abs(z.imag()) > 1e-10 * std::abs(z)) {
        std::ostringstream os;
        os << "hermitian_extend: value at omega = 0 has imaginary part " << z.imag() << " (|G| = " << std::abs(z)
           << "); a real time response needs G(0) real";
        throw Error(os.str());
    }

    const std::size_t m = pg.count();
    const std::size_t n = mode == ExtendMode::even_count ? 2 * (m - 1) : 2 * m - 1;
    SampledSpectrum out;
    out.grid = FrequencyGrid::two_sided(pg.domega(), n);
    out.values.resize(n);
    const std::size_t h = out.grid.zero_index();
    out.values[h] = complex(z.real(), 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        const complex v = in.values[j];
        if (h + j < n) out.values[h + j] = v;
        out.values[h - j] = std::conj(v);
    }
    out.time_origin = -static_cast<double>(h) * out.grid.dt();
    out.hermitian = true;
    return out;
}

double parseval_residual(const SampledSignal& signal, const SampledSpectrum& spectrum)
{
    signal.validate();
    spectrum.validate();
    if (!spectrum.grid.same_as(signal.grid.frequencies(), 1e-9))
        throw Error("parseval_residual: spectrum grid does not pair with the signal grid");
    double et = 0.0;
    for (double v : signal.values) et += v * v;
    et *= signal.grid.dt;
    double ew = 0.0;
    for (const auto& v : spectrum.values) ew += std::norm(v);
    ew *= spectrum.grid.domega() / (2.0 * pi);
    if (et == 0.0) return ew == 0.0 ? 0.0 : 1.0;
    return std::abs(et - ew) / et;
}

}  // namespace causal
