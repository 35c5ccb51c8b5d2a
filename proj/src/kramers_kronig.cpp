#include "causal/kramers_kronig.hpp"

#include "causal/constants.hpp"
#include "causal/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace causal {

namespace {

void check_positive_grid(const SampledFunction& f, const char* what)
{
    f.validate();
    const FrequencyGrid& g = f.grid;
    if (g.sidedness() != Sidedness::one_sided_positive || std::abs(g.omega0()) > 1e-12 * g.domega()) {
        std::ostringstream os;
        os << what << ": input must be sampled on a positive grid starting at omega = 0";
        throw Error(os.str());
    }
    if (g.count() < 8) {
        std::ostringstream os;
        os << what << ": need at least 8 bins";
        throw Error(os.str());
    }
}

// integral_b^inf dv / (v^2 (v^2 - w^2)), 0 <= w < b.
double tail_integral(double w, double b)
{
    const double r = w / b;
    if (r < 0.1) {
        double sum = 0.0;
        double term = 1.0 / (b * b * b);
        for (int k = 0; k < 12; ++k) {
            sum += term / (2.0 * k + 3.0);
            term *= r * r;
        }
        return sum;
    }
    return ((0.5 / w) * std::log((b + w) / (b - w)) - 1.0 / b) / (w * w);
}

// D in numer ~ D / v^2, least squares over the last 5% of bins.
double fit_tail(const std::vector<double>& numer, const FrequencyGrid& g)
{
    const std::size_t n = numer.size();
    const std::size_t first = std::min(n - 2, static_cast<std::size_t>(0.95 * static_cast<double>(n)));
    double num = 0.0, den = 0.0;
    for (std::size_t k = first; k < n; ++k) {
        const double v = g.omega(k);
        const double b = 1.0 / (v * v);
        num += b * numer[k];
        den += b * b;
    }
    return den > 0.0 ? num / den : 0.0;
}

// P int_0^inf numer(v) / (v^2 - w^2) dv at every grid frequency. The band
// part uses the trapezoid rule on (phi(v) - phi(w)) / (v - w) with
// phi = numer / (v + w), plus phi(w) ln((b - w) / w) for the subtracted pole.
std::vector<double> folded_pv(const std::vector<double>& numer, const FrequencyGrid& g)
{
    const std::size_t n = numer.size();
    const double h = g.domega();
    const double b = g.max_omega();
    const double tail = fit_tail(numer, g);
    std::vector<double> out(n, 0.0);

    // w = 0: integrand numer / v^2, limit at v = 0 extrapolated linearly.
    {
        auto q = [&](std::size_t k) { return numer[k] / (g.omega(k) * g.omega(k)); };
        double s = 0.5 * (2.0 * q(1) - q(2)) + 0.5 * q(n - 1);
        for (std::size_t k = 1; k + 1 < n; ++k) s += q(k);
        out[0] = h * s + tail * tail_integral(0.0, b);
    }

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            const double w = g.omega(j);
            const double phi_j = numer[j] / (2.0 * w);
            const double phi_lo = numer[j - 1] / (g.omega(j - 1) + w);
            const double phi_hi = numer[j + 1] / (g.omega(j + 1) + w);
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                double term;
                if (k == j) {
                    term = (phi_hi - phi_lo) / (2.0 * h);
                } else {
                    const double v = g.omega(k);
                    term = (numer[k] / (v + w) - phi_j) / (v - w);
                }
                s += (k == 0 || k + 1 == n) ? 0.5 * term : term;
            }
            out[j] = h * s + phi_j * std::log((b - w) / w) + tail * tail_integral(w, b);
        }
    };

    const std::size_t inner = n - 2;
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), inner / 256));
    if (threads <= 1) {
        work(1, n - 1);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (inner + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t lo = 1 + t * chunk;
            const std::size_t hi = std::min(n - 1, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    // The pole sits on the band edge at the last bin.
    out[n - 1] = 2.0 * out[n - 2] - out[n - 3];
    return out;
}

void check_truncation(const std::vector<double>& f, KKResult& r, const char* what)
{
    double top = 0.0;
    for (double v : f) top = std::max(top, std::abs(v));
    r.edge_ratio = top > 0.0 ? std::abs(f.back()) / top : 0.0;
    if (r.edge_ratio > 1e-3) {
        r.truncated = true;
        std::ostringstream os;
        os << what << ": input at the band edge is " << r.edge_ratio
           << " of its peak (above 1e-3); the band is probably truncated";
        r.warning = os.str();
        warn(r.warning);
    }
}

}  // namespace

KKResult kk_real_from_imag(const SampledFunction& n_imag, const KKOptions& options)
{
    check_positive_grid(n_imag, "kk_real_from_imag");
    const FrequencyGrid& g = n_imag.grid;
    const std::size_t n = g.count();

    // numer = v Im n, with Im n(inf) removed so the fitted tail decays.
    std::vector<double> numer(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = g.omega(k);
        const double v_im = options.absorption_form ? 0.5 * constants::speed_of_light * n_imag.values[k]
                                                    : v * n_imag.values[k];
        numer[k] = v_im - v * options.im_at_infinity;
    }

    KKResult r;
    std::vector<double> decay(n);
    for (std::size_t k = 0; k < n; ++k) decay[k] = options.absorption_form ? numer[k] : n_imag.values[k] - options.im_at_infinity;
    check_truncation(decay, r, "kk_real_from_imag");
    if (options.im_at_infinity != 0.0) {
        std::ostringstream os;
        os << "kk_real_from_imag: Im n(inf) = " << options.im_at_infinity
           << " makes the v Im n integral diverge logarithmically; the divergent part beyond the band is dropped";
        if (!r.warning.empty()) r.warning += "; ";
        r.warning += os.str();
        warn(os.str());
    }

    // numer = v (Im n - Im n(inf)) + (v - w) Im n(inf); the second piece
    // reduces to Im n(inf) / (v + w), integrated in-band in closed form.
    const auto pv = folded_pv(numer, g);
    const double b = g.max_omega();
    r.values = SampledFunction{g, std::vector<double>(n)};
    for (std::size_t k = 1; k < n; ++k) {
        const double w = g.omega(k);
        const double band_inf = options.im_at_infinity * std::log((b + w) / w);
        r.values.values[k] = options.re_at_infinity + (2.0 / pi) * (pv[k] + band_inf);
    }
    if (options.im_at_infinity != 0.0)
        r.values.values[0] = 2.0 * r.values.values[1] - r.values.values[2];
    else
        r.values.values[0] = options.re_at_infinity + (2.0 / pi) * pv[0];
    return r;
}

KKResult kk_imag_from_real(const SampledFunction& n_real, const KKOptions& options)
{
    check_positive_grid(n_real, "kk_imag_from_real");
    const FrequencyGrid& g = n_real.grid;
    const std::size_t n = g.count();
    std::vector<double> numer(n);
    for (std::size_t k = 0; k < n; ++k) numer[k] = n_real.values[k] - options.re_at_infinity;

    KKResult r;
    check_truncation(numer, r, "kk_imag_from_real");
    const auto pv = folded_pv(numer, g);
    r.values = SampledFunction{g, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) r.values.values[k] = -(2.0 * g.omega(k) / pi) * pv[k];
    return r;
}

}  // namespace causal
