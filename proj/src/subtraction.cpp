#include "causal/subtraction.hpp"

#include "causal/error.hpp"
#include "causal/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace causal {

namespace {

complex interpolate(const SampledSpectrum& G, double w)
{
    const FrequencyGrid& g = G.grid;
    const double pos = (w - g.omega0()) / g.domega();
    const double fl = std::floor(pos);
    const std::size_t i = static_cast<std::size_t>(std::max(0.0, fl));
    if (i + 1 >= G.values.size()) return G.values.back();
    const double f = pos - fl;
    return (1.0 - f) * G.values[i] + f * G.values[i + 1];
}

complex slope(const SampledSpectrum& G, std::size_t j)
{
    const std::size_t n = G.values.size();
    const double h = G.grid.domega();
    if (j == 0) return (G.values[1] - G.values[0]) / h;
    if (j + 1 == n) return (G.values[n - 1] - G.values[n - 2]) / h;
    return (G.values[j + 1] - G.values[j - 1]) / (2.0 * h);
}

// Re G(inf) from c + e L^2 / (v^2 + L^2) over the outer tenth of the band.
double fit_real_at_infinity(const SampledSpectrum& G)
{
    const FrequencyGrid& g = G.grid;
    const double top = g.max_omega();
    const double lambda = top / 64.0;
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t j = 0; j < g.count(); ++j) {
        const double v = g.omega(j);
        if (v < 0.9 * top) continue;
        const double e = lambda * lambda / (v * v + lambda * lambda);
        const double y = G.values[j].real();
        s11 += 1.0;
        s12 += e;
        s22 += e * e;
        b1 += y;
        b2 += e * y;
    }
    const double det = s11 * s22 - s12 * s12;
    if (s11 == 0.0) return G.values.back().real();
    if (std::abs(det) <= 1e-300) return b1 / s11;
    return (b1 * s22 - b2 * s12) / det;
}

double mean_norm(const FrequencyGrid& g, const std::vector<complex>& h, double side, double from, double to)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < g.count(); ++j) {
        const double a = side * g.omega(j);
        if (a >= from && a <= to) {
            sum += std::norm(h[j]);
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

SubtractionResult subtracted_dispersion(const SampledSpectrum& G, const SubtractionSpec& spec)
{
    if (!G.grid.is_two_sided()) throw Error("subtracted_dispersion: spectrum must be sampled on a two-sided grid");
    {
        SampledSpectrum copy = G;
        copy.hermitian = false;
        copy.validate();
    }
    const FrequencyGrid& grid = G.grid;
    const std::size_t n = grid.count();
    SubtractionResult out;
    out.real_part = SampledFunction{grid, std::vector<double>(n)};

    if (!spec.omega0) {
        const double re_inf = spec.g_at_omega0 ? spec.g_at_omega0->real() : fit_real_at_infinity(G);
        out.g0 = complex(re_inf, spec.im_at_infinity);
        if (spec.im_at_infinity != 0.0) {
            std::ostringstream os;
            os << "subtracted_dispersion: Im G(inf) = " << spec.im_at_infinity
               << " leaves a non-decaying integrand; the result is band-limited";
            warn(os.str());
        }
        SampledFunction f{grid, std::vector<double>(n)};
        for (std::size_t j = 0; j < n; ++j) f.values[j] = G.values[j].imag() - spec.im_at_infinity;
        const auto k = hilbert_transform(f, HilbertDirection::real_from_imag);
        for (std::size_t j = 0; j < n; ++j) out.real_part.values[j] = re_inf + k.values.values[j];
        return out;
    }

    const double w0 = *spec.omega0;
    const double lo = grid.omega(0);
    const double hi = grid.max_omega();
    if (!std::isfinite(w0) || w0 < lo || w0 > hi) {
        std::ostringstream os;
        os << "subtracted_dispersion: omega0 = " << w0 << " lies outside the sampled band [" << lo << ", " << hi << "]";
        throw Error(os.str());
    }
    const complex g0 = spec.g_at_omega0 ? *spec.g_at_omega0 : interpolate(G, w0);
    out.g0 = g0;

    std::vector<complex> h(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double d = grid.omega(j) - w0;
        h[j] = std::abs(d) < 1e-9 * grid.domega() ? slope(G, j) : (G.values[j] - g0) / d;
    }

    double total = 0.0, peak = 0.0;
    for (const auto& v : h) {
        total += std::norm(v);
        peak = std::max(peak, std::norm(v));
    }
    total *= grid.domega();
    const double edge = std::max(std::norm(h.front()) * std::abs(grid.omega(0)), std::norm(h.back()) * std::abs(hi));
    out.edge_ratio = total > 0.0 ? edge / total : 0.0;

    // |H|^2 ~ |w|^-s on each side; s <= 1 means the integral diverges.
    for (double side : {-1.0, 1.0}) {
        const double reach = side < 0.0 ? -lo : hi;
        const double mid = mean_norm(grid, h, side, 0.45 * reach, 0.55 * reach);
        const double outer = mean_norm(grid, h, side, 0.9 * reach, reach);
        if (!(mid > 0.0) || outer <= 1e-12 * peak) continue;
        const double s = std::log(mid / outer) / std::log(0.95 / 0.5);
        if (s <= 1.0) {
            std::ostringstream os;
            os << "subtracted_dispersion: H = (G - G(w0)) / (w - w0) is not square-integrable: |H|^2 falls off as |w|^-"
               << s << " toward " << (side < 0.0 ? "negative" : "positive") << " frequencies";
            throw Error(os.str());
        }
    }

    SampledFunction im_h{grid, std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) im_h.values[j] = h[j].imag();
    const auto re_h = hilbert_transform(im_h, HilbertDirection::real_from_imag);
    for (std::size_t j = 0; j < n; ++j)
        out.real_part.values[j] = g0.real() + (grid.omega(j) - w0) * re_h.values.values[j];
    return out;
}

}  // namespace causal
