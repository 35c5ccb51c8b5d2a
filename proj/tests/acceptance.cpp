// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "causal/causality.hpp"
#include "causal/cli.hpp"
#include "causal/constants.hpp"
#include "causal/hilbert.hpp"
#include "causal/kramers_kronig.hpp"
#include "causal/media.hpp"
#include "causal/propagation.hpp"
#include "causal/spectral.hpp"
#include "causal/subtraction.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace causal;

namespace {

const std::string fixtures = CAUSAL_FIXTURE_DIR;

int failures = 0;

void report(int id, bool ok, const std::string& detail)
{
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class Fn>
double seconds(Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0, double e = 0)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a, b, c, d, e);
    return buf;
}

// Oracles written out in real arithmetic, apart from the library.
complex lorentz_oracle(double w)
{
    const double a = 1.0 - w * w, b = 0.1 * w, d = a * a + b * b;
    const double er = 1.0 + 0.2 * a / d;
    const double ei = 0.2 * b / d;
    const double nr = std::sqrt(0.5 * (std::hypot(er, ei) + er));
    return {nr, ei / (2.0 * nr)};
}

complex exp_pair(double w) { return complex(1.0, w) / (1.0 + w * w); }  // 1 / (1 - i w)

double rel_l2(const std::vector<double>& got, const std::function<double(double)>& want, const FrequencyGrid& g,
              double lo, double hi)
{
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.count(); ++j) {
        const double w = g.omega(j);
        if (w < lo || w > hi) continue;
        const double e = want(w);
        num += (got[j] - e) * (got[j] - e);
        den += e * e;
    }
    return std::sqrt(num / den);
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b, const FrequencyGrid& g)
{
    const auto [lo, hi] = interior_band(g);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.count(); ++j) {
        if (g.omega(j) < lo || g.omega(j) > hi) continue;
        num += (a[j] - b[j]) * (a[j] - b[j]);
        den += b[j] * b[j];
    }
    return std::sqrt(num / den);
}

LorentzMedium lorentz()
{
    LorentzMedium m;
    m.resonances.push_back({1.0, 0.1, 1.0});
    m.plasma_omega_sq = 0.2;
    return m;
}

SlabConfig lorentz_slab()
{
    SlabConfig s;
    s.thickness_delta = 5.0 * constants::speed_of_light;
    s.medium = lorentz();
    return s;
}

void criterion1()
{
    const auto grid = FrequencyGrid::positive(20.0 / 16383.0, 16384);
    KKResult r;
    const double t = seconds([&] {
        const auto ni = sample_function(grid, [](double w) { return lorentz_oracle(w).imag(); });
        r = kk_real_from_imag(ni);
    });
    const double err = rel_l2(r.values.values, [](double w) { return lorentz_oracle(w).real(); }, grid, 0.1, 5.0);
    report(1, err < 1e-2 && t < 10.0, fmt("relative L2 on [0.1, 5] = %.3e (< 1e-2), %.3f s (< 10 s)", err, t));
}

void criterion2()
{
    const auto grid = FrequencyGrid::two_sided(2.0 * pi / 400.0, 16384);
    CausalityReport fwd, back;
    const double t1 = seconds([&] { fwd = causality_verdict(sample_spectrum(grid, exp_pair)); });
    const double t2 =
        seconds([&] { back = causality_verdict(sample_spectrum(grid, [](double w) { return exp_pair(-w); })); });
    const bool ok = fwd.anticausal_leakage < 1e-6 && back.anticausal_leakage > 0.9 && t1 < 1.0 && t2 < 1.0;
    report(2, ok,
           fmt("leakage 1/(1-iw) = %.3e (< 1e-6), 1/(1+iw) = %.4f (> 0.9), %.3f s / %.3f s (< 1 s)",
               fwd.anticausal_leakage, back.anticausal_leakage, t1, t2));
}

void criterion3()
{
    bool monotone = false, decreasing = false;
    double worst_rise = 0.0, near = 0.0, far = 0.0, probe = 0.0;
    const double t = seconds([&] {
        const TimeGrid tg = TimeGrid::centered(0.1, std::size_t{1} << 14);
        SampledSpectrum K = shifted_transfer(lorentz_slab(), tg.frequencies());
        for (auto& v : K.values) v -= 1.0;
        const std::vector<double> ys = {0.0, 0.5, 1.0, 2.0};
        const auto norms = line_norms(K, ys);
        monotone = true;
        for (std::size_t i = 1; i < norms.size(); ++i) {
            const double rise = (norms[i].norm - norms[i - 1].norm) / norms[i - 1].norm;
            worst_rise = std::max(worst_rise, rise);
            monotone = monotone && rise <= 1e-9;
        }
        probe = 0.25 * K.grid.max_omega();
        const auto prof = uhp_decay_profile(K, ys, probe);
        near = prof.sup_near;
        far = prof.sup_far;
        decreasing = far < near;
    });
    report(3, monotone && decreasing && t < 5.0,
           fmt("line norms y = 0, 0.5, 1, 2 nonincreasing (largest relative rise %.2e, tol 1e-9); edge sup at "
               "x = %.3f: %.4e -> 2x: %.4e; %.3f s (< 5 s)",
               worst_rise, probe, near, far, t));
}

void criterion4()
{
    const auto grid = FrequencyGrid::two_sided(0.05, 4096);
    double involution = 0.0, disc_re = 0.0, disc_im = 0.0;
    const double t = seconds([&] {
        const auto gr = sample_function(grid, [](double w) { return exp_pair(w).real(); });
        const auto gi = sample_function(grid, [](double w) { return exp_pair(w).imag(); });
        for (auto method : {HilbertMethod::fft, HilbertMethod::quadrature}) {
            for (const auto* f : {&gr, &gi}) {
                const auto twice = conjugate_function(conjugate_function(*f, method), method);
                std::vector<double> minus(f->values.size());
                for (std::size_t j = 0; j < minus.size(); ++j) minus[j] = -f->values[j];
                involution = std::max(involution, rel_l2(twice.values, minus, grid));
            }
        }
        const auto re = hilbert_transform(gi, HilbertDirection::real_from_imag);
        const auto im = hilbert_transform(gr, HilbertDirection::imag_from_real);
        disc_re = rel_l2(re.quadrature.values, re.values.values, grid);
        disc_im = rel_l2(im.quadrature.values, im.values.values, grid);
    });
    const double disc = std::max(disc_re, disc_im);
    report(4, involution < 1e-3 && disc < 1e-4 && t < 5.0,
           fmt("H(H f) = -f residual %.3e (< 1e-3); quadrature vs FFT %.3e (< 1e-4); %.3f s (< 5 s)", involution, disc,
               t));
}

void criterion5()
{
    FrontDemo demo;
    PropagationResult r;
    Velocities v;
    double vg = 0.0;
    const double t = seconds([&] {
        demo = front_demo();
        r = propagate_pulse(demo.input, demo.slab);
        v = measure_velocities(r, r.input_front, r.input_peak, demo.slab);
        vg = group_velocity(demo.slab.medium, demo.carrier);
    });
    const double c = constants::speed_of_light;
    const double dt = demo.grid.dt;
    const double offset = r.front_arrival - r.vacuum_front_time;
    const bool ok = vg > c && v.peak_transit_velocity / c > 1.0 && std::abs(offset) <= 2.0 * dt + 1e-9 &&
                    demo.grid.count == (std::size_t{1} << 15) && t < 30.0;
    report(5, ok,
           fmt("v_g/c = %.4f (> 1), peak transit / c = %.4f (> 1), front - (input front + delta/c) = %.2f s "
               "(|.| <= 2 dt = %.2f s), %.3f s (< 30 s)",
               vg / c, v.peak_transit_velocity / c, offset, 2.0 * dt, t) +
               fmt(" [N = %.0f]", static_cast<double>(demo.grid.count)));
}

void criterion6()
{
    const auto medium = cli::load_medium(fixtures + "/lowered_table.txt");
    SlabConfig slab;
    slab.thickness_delta = 5.0 * constants::speed_of_light;
    slab.medium = medium;
    const auto rep = relativistic_causality_check(slab, TimeGrid::centered(0.1, std::size_t{1} << 14));

    const std::string path = fixtures + "/lowered_table.txt";
    const char* argv[] = {"causal", "check", "--medium", path.c_str()};
    std::ostringstream out, err;
    const int code = cli::run(4, argv, out, err);
    const bool ok = rep.verdict == Verdict::anticausal && rep.anticausal_leakage > 1e-2 && code == 2;
    report(6, ok,
           fmt("n(inf) = 0.9 table: leakage %.4f (> 1e-2), verdict ", rep.anticausal_leakage) + to_string(rep.verdict) +
               fmt(", CLI check exit %.0f (== 2)", code));
}

void criterion7()
{
    const auto grid = FrequencyGrid::two_sided(0.05, 4096);
    const auto G = sample_spectrum(grid, [](double w) { return 0.5 + exp_pair(w); });
    const auto exact = real_part(G);
    const auto sub = subtracted_dispersion(G, SubtractionSpec{});
    const auto unsub = hilbert_transform(imag_part(G), HilbertDirection::real_from_imag);
    const double e_sub = rel_l2(sub.real_part.values, exact.values, grid);
    const double e_unsub = rel_l2(unsub.values.values, exact.values, grid);
    report(7, e_sub < 1e-3 && e_unsub > 0.1,
           fmt("G = 0.5 + 1/(1-iw): subtracted residual %.3e (< 1e-3), unsubtracted %.4f (> 0.1)", e_sub, e_unsub));
}

void criterion8()
{
    bool cubic = true;
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> expo(-6.0, 0.0), scale(1.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double L = std::pow(10.0, expo(rng));
        const double s = scale(rng);
        const double ratio = cli::scharnhorst_ratio(s * L).ratio_exact / cli::scharnhorst_ratio(L).ratio_exact;
        cubic = cubic && std::abs(ratio / (s * s * s) - 1.0) < 1e-13;
    }
    const auto r = cli::scharnhorst_ratio(1e-4);
    const bool coeffs = r.coefficient_quoted == 1.5e6 && std::abs(r.coefficient_exact - 1.8769e6) < 1.0;
    const bool small = r.delta_c_over_c < 1e-35;
    report(8, cubic && coeffs && small,
           std::string("cubic scaling ") + (cubic ? "exact" : "BROKEN") +
               fmt("; coefficients quoted %.4g, exact %.6g; delta c / c at L = 1 um = %.4e (< 1e-35)",
                   r.coefficient_quoted, r.coefficient_exact, r.delta_c_over_c));
}

// Hermitian spectrum from the positive-frequency rows of a fixture.
SampledSpectrum extended(double domega, const std::vector<complex>& positive)
{
    SampledSpectrum half;
    half.grid = FrequencyGrid::positive(domega, positive.size());
    half.values = positive;
    return hermitian_extend(half, ExtendMode::odd_count);
}

void criterion9()
{
    const double tau = 5.0;
    auto kernel = [&](complex n, double w) { return std::exp(complex(0.0, w * tau) * (n - 1.0)) - 1.0; };

    double worst = 0.0;
    std::string names;
    auto parseval = [&](const std::string& name, const SampledSpectrum& S) {
        const double res = parseval_residual(inverse_transform(S), S);
        worst = std::max(worst, res);
        names += (names.empty() ? "" : ", ") + name + fmt(" %.1e", res);
    };

    for (const char* f : {"lorentz_table.txt", "lowered_table.txt"}) {
        const auto cols = cli::read_index_table(fixtures + "/" + f);
        std::vector<complex> v(cols.omega.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = kernel(complex(cols.re[k], cols.im[k]), cols.omega[k]);
        parseval(f, extended(cols.omega[1], v));
    }
    {
        const auto cols = cli::read_index_table(fixtures + "/lorentz_imag_only.txt");
        std::vector<complex> v(cols.omega.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = complex(0.0, cols.im[k]);
        parseval("lorentz_imag_only.txt", extended(cols.omega[1], v));
    }
    {
        // Same positive rows as the tables, from the model file.
        const auto m = cli::load_medium(fixtures + "/lorentz.medium");
        const auto rows = cli::read_index_table(fixtures + "/lorentz_table.txt").omega;
        std::vector<complex> v(rows.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = kernel(refractive_index(m, rows[k]), rows[k]);
        parseval("lorentz.medium", extended(rows[1], v));
    }
    {
        const auto demo = front_demo();
        const double res = parseval_residual(demo.input, forward_transform(demo.input));
        worst = std::max(worst, res);
        names += fmt(", demo pulse %.1e", res);
    }

    // Symmetry on every medium kind.
    std::vector<std::pair<std::string, Medium>> media = {
        {"lorentz.medium", cli::load_medium(fixtures + "/lorentz.medium")},
        {"lorentz_table.txt", cli::load_medium(fixtures + "/lorentz_table.txt")},
        {"lowered_table.txt", cli::load_medium(fixtures + "/lowered_table.txt")},
        {"constant", ConstantIndex{complex(1.5, 0.01)}},
    };
    LorentzMedium multi;
    multi.resonances = {{0.5, 0.05, 0.3}, {2.0, 0.2, 0.7}, {0.0, 0.3, 0.1}};
    multi.plasma_omega_sq = 1.3;
    media.emplace_back("three-term Lorentz", multi);

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> omega(1e-3, 31.0);
    double asym = 0.0;
    for (const auto& [name, m] : media) {
        for (int i = 0; i < 2000; ++i) {
            const double w = omega(rng);
            const complex p = refractive_index(m, w);
            const complex q = refractive_index(m, -w);
            asym = std::max(asym, std::abs(q - std::conj(p)) / std::abs(p));
        }
    }
    const bool ok = worst < 1e-10 && asym <= 4.0 * std::numeric_limits<double>::epsilon();
    report(9, ok,
           "Parseval residual " + names + fmt(" (< 1e-10); |n(-w) - conj n(w)| / |n| = %.1e over %.0f media", asym,
                                              static_cast<double>(media.size())));
}

}  // namespace

int main()
{
    const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
