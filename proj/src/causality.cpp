#include "causal/causality.hpp"

#include "causal/error.hpp"
#include "causal/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace causal {

namespace {

constexpr int tail_order = 4;

void check_two_sided(const SampledSpectrum& G, const char* what)
{
    if (!G.grid.is_two_sided()) {
        std::ostringstream os;
        os << what << ": spectrum must be sampled on a two-sided grid";
        throw Error(os.str());
    }
    SampledSpectrum copy = G;
    copy.hermitian = false;
    copy.validate();
}

double max_abs(const std::vector<complex>& v)
{
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<complex> remainder(const SampledSpectrum& G, const CausalTail& tail, bool drop_constant)
{
    std::vector<complex> r(G.values.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        r[j] = G.values[j] - tail.spectrum(complex(G.grid.omega(j), 0.0));
        if (drop_constant) r[j] -= tail.c[0];
    }
    return r;
}

double centered_time(const FrequencyGrid& grid, std::size_t k)
{
    return (static_cast<double>(k) - static_cast<double>(grid.zero_index())) * grid.dt();
}

// Complex response on the centered window; real for Hermitian G.
std::vector<complex> response(const SampledSpectrum& G, const CausalTail& tail)
{
    const FrequencyGrid& grid = G.grid;
    const double dt = grid.dt();
    const double t0 = -static_cast<double>(grid.zero_index()) * dt;
    auto g = detail::to_time(grid, remainder(G, tail, false), t0);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += tail.kernel(centered_time(grid, k), dt);
    return g;
}

double leakage_of(const SampledSpectrum& G, const std::vector<complex>& g)
{
    double total = 0.0;
    double early = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double e = std::norm(g[k]);
        total += e;
        if (centered_time(G.grid, k) < 0.0) early += e;
    }
    return total > 0.0 ? std::sqrt(early / total) : 0.0;
}

// G on the line Im w = y through the Cauchy integral
//   (1 / 2 pi i) integral R(v) / (v - z) dv,   z = w + i y,
// which equals the transform of exp(-y t) r(t) restricted to t >= 0. The
// pole is subtracted so the band sum stays smooth for small y.
std::vector<complex> continue_line(const SampledSpectrum& G, const CausalTail& tail, double y)
{
    const FrequencyGrid& grid = G.grid;
    const std::size_t n = grid.count();
    const double h = grid.domega();
    const auto r = remainder(G, tail, true);
    auto kernel = [h, y](long d) { return 1.0 / complex(static_cast<double>(d) * h, -y); };
    const auto s = detail::correlate(r, kernel);
    const auto q = detail::correlate(std::vector<complex>(n, complex(1.0, 0.0)), kernel);
    const double lo = grid.omega(0) - 0.5 * h;
    const double hi = grid.max_omega() + 0.5 * h;
    const complex two_pi_i(0.0, 2.0 * pi);
    std::vector<complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const complex z(grid.omega(j), y);
        const complex band = h * (s[j] - r[j] * q[j]) + r[j] * (std::log(hi - z) - std::log(lo - z));
        out[j] = tail.c[0] + tail.spectrum(z) + band / two_pi_i;
    }
    return out;
}

void require_causal(const SampledSpectrum& G, const CausalTail& tail, const char* what)
{
    const double leak = leakage_of(G, response(G, tail));
    if (leak > CausalityOptions{}.anticausal_threshold) {
        std::ostringstream os;
        os << what << ": spectrum is anticausal (leakage " << leak
           << "); continuation into the upper half-plane needs a causal response";
        throw Error(os.str());
    }
}

complex interpolate(const FrequencyGrid& grid, const std::vector<complex>& v, double w)
{
    const double pos = (w - grid.omega0()) / grid.domega();
    const double fl = std::floor(pos);
    const std::size_t i = static_cast<std::size_t>(std::max(0.0, fl));
    if (i + 1 >= v.size()) return v.back();
    const double f = pos - fl;
    return (1.0 - f) * v[i] + f * v[i + 1];
}

}  // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::causal: return "causal";
    case Verdict::anticausal: return "anticausal";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

complex CausalTail::spectrum(complex z) const
{
    const complex base = lambda / (lambda - complex(0.0, 1.0) * z);
    complex term = 1.0;
    complex sum = 0.0;
    for (int p = 1; p <= tail_order; ++p) {
        term *= base;
        sum += c[p] * term;
    }
    return sum;
}

double CausalTail::kernel(double t, double dt) const
{
    if (std::abs(t) < 1e-9 * dt) return 0.5 * c[1] * lambda;
    if (t < 0.0) return 0.0;
    const double decay = std::exp(-lambda * t);
    double sum = 0.0;
    double power = lambda;  // lambda^p t^(p-1) / (p-1)!
    for (int p = 1; p <= tail_order; ++p) {
        sum += c[p] * power * decay;
        power *= lambda * t / static_cast<double>(p);
    }
    return sum;
}

CausalTail fit_causal_tail(const SampledSpectrum& G)
{
    check_two_sided(G, "causal tail fit");
    const FrequencyGrid& grid = G.grid;
    const double top = grid.max_omega();
    CausalTail tail;
    tail.lambda = top / 64.0;

    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < grid.count(); ++j) {
        const double w = grid.omega(j);
        if (w >= 0.5 * top) rows.push_back(j);
    }
    if (rows.size() < 2 * (tail_order + 1) || max_abs(G.values) == 0.0) return tail;

    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd a(2 * m, tail_order + 1);
    Eigen::VectorXd b(2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double w = grid.omega(rows[static_cast<std::size_t>(i)]);
        const complex base = tail.lambda / complex(tail.lambda, -w);
        complex term = 1.0;
        for (int p = 0; p <= tail_order; ++p) {
            a(i, p) = term.real();
            a(m + i, p) = term.imag();
            term *= base;
        }
        const complex v = G.values[rows[static_cast<std::size_t>(i)]];
        b(i) = v.real();
        b(m + i) = v.imag();
    }
    Eigen::VectorXd scale = a.colwise().norm().transpose();
    for (Eigen::Index p = 0; p <= tail_order; ++p) {
        if (scale(p) == 0.0) scale(p) = 1.0;
        a.col(p) /= scale(p);
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    for (int p = 0; p <= tail_order; ++p) tail.c[static_cast<std::size_t>(p)] = x(p) / scale(p);
    return tail;
}

SampledSignal causal_response(const SampledSpectrum& G)
{
    check_two_sided(G, "causal_response");
    const auto [defect, bin] = G.hermitian_defect();
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "causal_response: spectrum is not Hermitian; worst bin " << bin << " (omega = " << G.grid.omega(bin)
           << ") off by " << defect << " relative";
        throw Error(os.str());
    }
    const CausalTail tail = fit_causal_tail(G);
    const auto g = response(G, tail);
    SampledSignal out;
    out.grid = TimeGrid{-static_cast<double>(G.grid.zero_index()) * G.grid.dt(), G.grid.dt(), G.grid.count()};
    out.values.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out.values[k] = g[k].real();
    return out;
}

CausalityReport causality_verdict(const SampledSpectrum& G, const CausalityOptions& options)
{
    check_two_sided(G, "causality_verdict");
    if (!(options.leak_tol >= 0.0) || !(options.anticausal_threshold >= options.leak_tol))
        throw Error("causality_verdict: need 0 <= leak_tol <= anticausal_threshold");
    CausalityReport report;
    for (const auto& v : G.values) report.l2_norm += std::norm(v);
    report.l2_norm *= G.grid.domega();
    if (report.l2_norm == 0.0) {
        report.verdict = Verdict::causal;
        for (double y : options.decay_y) report.uhp_decay.push_back({y, 0.0});
        return report;
    }

    const CausalTail tail = fit_causal_tail(G);
    report.anticausal_leakage = std::clamp(leakage_of(G, response(G, tail)), 0.0, 1.0);
    if (report.anticausal_leakage < options.leak_tol)
        report.verdict = Verdict::causal;
    else if (report.anticausal_leakage > options.anticausal_threshold)
        report.verdict = Verdict::anticausal;
    else
        report.verdict = Verdict::inconclusive;

    report.uhp_decay = line_norms(G, options.decay_y, true);
    for (std::size_t i = 1; i < report.uhp_decay.size(); ++i) {
        const auto& a = report.uhp_decay[i - 1];
        const auto& b = report.uhp_decay[i];
        if (b.y >= a.y && b.norm > a.norm * (1.0 + 1e-9)) report.decay_monotone = false;
    }
    return report;
}

SampledSpectrum analytic_continue(const SampledSpectrum& G, double y, bool allow_anticausal)
{
    check_two_sided(G, "analytic_continue");
    if (!(y >= 0.0) || !std::isfinite(y)) {
        std::ostringstream os;
        os << "analytic_continue: y = " << y << " lies outside the closed upper half-plane";
        throw Error(os.str());
    }
    if (y == 0.0) return G;
    const CausalTail tail = fit_causal_tail(G);
    if (!allow_anticausal) require_causal(G, tail, "analytic_continue");
    SampledSpectrum out = G;
    out.values = continue_line(G, tail, y);
    out.hermitian = false;
    return out;
}

std::vector<LineNorm> line_norms(const SampledSpectrum& G, const std::vector<double>& y_values, bool allow_anticausal)
{
    check_two_sided(G, "line_norms");
    const CausalTail tail = fit_causal_tail(G);
    if (!allow_anticausal) require_causal(G, tail, "line_norms");
    std::vector<LineNorm> out;
    for (double y : y_values) {
        if (!(y >= 0.0)) throw Error("line_norms: y values must be >= 0");
        const auto v = y == 0.0 ? G.values : continue_line(G, tail, y);
        double s = 0.0;
        for (const auto& x : v) s += std::norm(x);
        out.push_back({y, s * G.grid.domega()});
    }
    return out;
}

DecayProfile uhp_decay_profile(const SampledSpectrum& G, const std::vector<double>& y_values, double x_probe,
                               bool allow_anticausal)
{
    check_two_sided(G, "uhp_decay_profile");
    if (!(x_probe > 0.0)) throw Error("uhp_decay_profile: x_probe must be positive");
    const double top = G.grid.max_omega();
    if (2.0 * x_probe > top || -2.0 * x_probe < G.grid.omega(0)) {
        std::ostringstream os;
        os << "uhp_decay_profile: probe 2 x " << x_probe << " lies beyond the sampled band [" << G.grid.omega(0)
           << ", " << top << "]";
        throw Error(os.str());
    }
    const CausalTail tail = fit_causal_tail(G);
    if (!allow_anticausal && max_abs(G.values) > 0.0) require_causal(G, tail, "uhp_decay_profile");

    DecayProfile prof;
    prof.x_probe = x_probe;
    for (double y : y_values) {
        if (!(y >= 0.0)) throw Error("uhp_decay_profile: y values must be >= 0");
        const auto v = y == 0.0 ? G.values : continue_line(G, tail, y);
        auto edge = [&](double x) {
            return std::max(std::abs(interpolate(G.grid, v, x)), std::abs(interpolate(G.grid, v, -x)));
        };
        prof.near.push_back({y, edge(x_probe)});
        prof.far.push_back({y, edge(2.0 * x_probe)});
        prof.sup_near = std::max(prof.sup_near, prof.near.back().sup);
        prof.sup_far = std::max(prof.sup_far, prof.far.back().sup);
    }
    prof.ratio = prof.sup_near > 0.0 ? prof.sup_far / prof.sup_near : 0.0;
    prof.decreasing = prof.sup_near == 0.0 || prof.ratio < 1.0;
    return prof;
}

}  // namespace causal
