#include "causal/hilbert.hpp"

#include "causal/error.hpp"
#include "causal/spectral.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace causal {

namespace {

// Powers b^p of b = L / (L - i v) are causal, so K[Im b^p] = Re b^p and
// K[Re b^p] = -Im b^p. Odd data is fitted with Im b^p and even data with
// Re b^p, p = 1..order, which matches the asymptotic series to order v^-2*order.
struct RationalTail
{
    static constexpr int order = 3;
    double lambda = 1.0;
    std::array<double, order> odd{};
    std::array<double, order> even{};

    double value(double v) const
    {
        const complex base = lambda / complex(lambda, -v);
        complex term = 1.0;
        double s = 0.0;
        for (int p = 0; p < order; ++p) {
            term *= base;
            s += odd[p] * term.imag() + even[p] * term.real();
        }
        return s;
    }
    double conjugate(double w) const
    {
        const complex base = lambda / complex(lambda, -w);
        complex term = 1.0;
        double s = 0.0;
        for (int p = 0; p < order; ++p) {
            term *= base;
            s += odd[p] * term.real() - even[p] * term.imag();
        }
        return s;
    }
};

RationalTail fit_tail(const SampledFunction& f)
{
    const FrequencyGrid& g = f.grid;
    RationalTail tail;
    const double top = g.max_omega();
    tail.lambda = top / 8.0;
    constexpr int m = RationalTail::order;
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < g.count(); ++j)
        if (g.omega(j) >= 0.9 * top) rows.push_back(j);
    if (rows.size() < static_cast<std::size_t>(m)) return tail;

    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd ao(r, m), ae(r, m);
    Eigen::VectorXd bo(r), be(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        const std::size_t j = rows[static_cast<std::size_t>(i)];
        const double v = g.omega(j);
        const std::size_t mj = g.mirror(j);
        const double fm = mj == FrequencyGrid::npos ? f.values[j] : f.values[mj];
        bo(i) = 0.5 * (f.values[j] - fm);
        be(i) = 0.5 * (f.values[j] + fm);
        const complex base = tail.lambda / complex(tail.lambda, -v);
        complex term = 1.0;
        for (int p = 0; p < m; ++p) {
            term *= base;
            ao(i, p) = term.imag();
            ae(i, p) = term.real();
        }
    }
    auto solve = [](Eigen::MatrixXd a, const Eigen::VectorXd& b) {
        Eigen::VectorXd scale = a.colwise().norm().transpose();
        for (Eigen::Index p = 0; p < a.cols(); ++p) {
            if (scale(p) == 0.0) scale(p) = 1.0;
            a.col(p) /= scale(p);
        }
        Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
        return Eigen::VectorXd(x.cwiseQuotient(scale));
    };
    const Eigen::VectorXd xo = solve(ao, bo);
    const Eigen::VectorXd xe = solve(ae, be);
    for (int p = 0; p < m; ++p) {
        tail.odd[p] = xo(p);
        tail.even[p] = xe(p);
    }
    return tail;
}

// Midpoint-rule principal value over [w_0 - h/2, w_{N-1} + h/2]. With the
// singular cell removed by subtracting f(w_j), the sum reduces to bin
// offsets, and sum_k f_k / (k - j) is a discrete convolution.
std::vector<double> quadrature_route(const std::vector<double>& f)
{
    const std::size_t n = f.size();
    std::vector<complex> x(f.begin(), f.end());
    const auto s = detail::correlate(x, [](long d) { return d == 0 ? complex(0.0) : complex(1.0 / static_cast<double>(d)); });

    // harmonic[k] = 1 + 1/2 + ... + 1/k
    std::vector<double> harmonic(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) harmonic[k] = harmonic[k - 1] + 1.0 / static_cast<double>(k);

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double q = harmonic[n - 1 - j] - harmonic[j];
        double slope;  // h * f'(w_j)
        if (j == 0)
            slope = f[1] - f[0];
        else if (j + 1 == n)
            slope = f[n - 1] - f[n - 2];
        else
            slope = 0.5 * (f[j + 1] - f[j - 1]);
        const double edge = std::log((static_cast<double>(n - j) - 0.5) / (static_cast<double>(j) + 0.5));
        out[j] = (s[j].real() - f[j] * q + slope + f[j] * edge) / pi;
    }
    return out;
}

// Periodic spectral route: embed the band in a zero-padded period, move to
// the conjugate variable, multiply by sgn, and come back.
std::vector<double> fft_route(const std::vector<double>& f, const FrequencyGrid& grid)
{
    const std::size_t n = f.size();
    const std::size_t len = detail::next_power_of_two(8 * n);
    const long wrap = static_cast<long>(len);
    auto slot = [&](std::size_t j) {
        const long m = grid.bin(j);
        return static_cast<std::size_t>(((m % wrap) + wrap) % wrap);
    };
    std::vector<complex> buf(len, complex(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) buf[slot(j)] = f[j];
    auto e = detail::dft(buf, +1);
    const double inv = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < len; ++k) {
        double sgn = 0.0;
        if (k != 0 && k != len / 2) sgn = k < len / 2 ? 1.0 : -1.0;
        e[k] *= sgn * inv;
    }
    const auto c = detail::dft(e, -1);

    // The projection acts on one period, i.e. convolves with the odd-offset
    // kernel (2/L) cot(pi d / L) instead of 2 / (pi d). The difference is
    // smooth and known, so it is removed exactly.
    const double period = static_cast<double>(len);
    std::vector<complex> x(f.begin(), f.end());
    const auto fix = detail::correlate(x, [period](long d) {
        if (d % 2 == 0) return complex(0.0);
        const double dd = static_cast<double>(d);
        return complex(2.0 / period / std::tan(pi * dd / period) - 2.0 / (pi * dd));
    });
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = c[slot(j)].imag() - fix[j].real();
    return out;
}

}  // namespace

SampledFunction conjugate_function(const SampledFunction& f, HilbertMethod method)
{
    f.validate();
    if (!f.grid.is_two_sided()) throw Error("hilbert transform: input must be sampled on a two-sided grid");
    if (f.grid.count() < 4) throw Error("hilbert transform: need at least 4 bins");

    const RationalTail tail = fit_tail(f);
    std::vector<double> rest(f.values.size());
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] = f.values[j] - tail.value(f.grid.omega(j));

    const auto k = method == HilbertMethod::quadrature ? quadrature_route(rest) : fft_route(rest, f.grid);
    SampledFunction out{f.grid, std::vector<double>(k.size())};
    for (std::size_t j = 0; j < k.size(); ++j) out.values[j] = k[j] + tail.conjugate(f.grid.omega(j));
    return out;
}

HilbertResult hilbert_transform(const SampledFunction& input, HilbertDirection direction)
{
    HilbertResult r;
    r.values = conjugate_function(input, HilbertMethod::fft);
    r.quadrature = conjugate_function(input, HilbertMethod::quadrature);
    if (direction == HilbertDirection::imag_from_real) {
        for (auto& v : r.values.values) v = -v;
        for (auto& v : r.quadrature.values) v = -v;
    }
    r.discrepancy = relative_l2_interior(r.quadrature, r.values);
    r.inconclusive = r.discrepancy > 1e-2;
    return r;
}

}  // namespace causal
