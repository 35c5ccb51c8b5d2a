#include "causal/propagation.hpp"

#include "causal/constants.hpp"
#include "causal/error.hpp"
#include "causal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace causal {

namespace {

SampledSpectrum transfer(const SlabConfig& config, const FrequencyGrid& grid, double index_shift, const char* what)
{
    config.validate();
    if (!grid.is_two_sided()) {
        std::ostringstream os;
        os << what << ": grid must be two-sided";
        throw Error(os.str());
    }
    grid.validate();
    const double tau = config.transit_time();
    auto G = sample_spectrum(grid, [&](double w) {
        const complex n = refractive_index(config.medium, w) - index_shift;
        return std::exp(complex(0.0, w * tau) * n);
    });
    G.hermitian = true;
    return G;
}

SampledSignal apply(const SampledSignal& input, const SampledSpectrum& spectrum_in, const SampledSpectrum& G)
{
    SampledSpectrum X = spectrum_in;
    for (std::size_t j = 0; j < X.values.size(); ++j) X.values[j] *= G.values[j];
    SampledSignal out = inverse_transform(X);
    out.grid = input.grid;
    return out;
}

// C^10 smoothstep: 0 at x <= 0, 1 at x >= 1, ten matching derivatives at both ends.
double smoothstep(double x)
{
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    constexpr int order = 10;
    double sum = 0.0;
    double binom_a = 1.0;   // C(order + k, k)
    double binom_b = 1.0;   // C(2 order + 1, order - k)
    for (int k = 0; k < order; ++k) binom_b = binom_b * (2 * order + 1 - k) / (k + 1);
    double power = 1.0;
    for (int k = 0; k <= order; ++k) {
        sum += binom_a * binom_b * power;
        power *= -x;
        binom_a = binom_a * (order + k + 1) / (k + 1);
        binom_b = binom_b * (order - k) / (order + k + 2);
    }
    return std::pow(x, order + 1) * sum;
}

}  // namespace

void SlabConfig::validate() const
{
    if (!std::isfinite(thickness_delta) || thickness_delta < 0.0)
        throw Error("slab: thickness_delta must be finite and >= 0");
    if (!transmission_unity)
        throw Error("slab: only unit face transmission is modeled; set transmission_unity");
    if (const auto* m = std::get_if<LorentzMedium>(&medium)) m->validate();
    if (const auto* t = std::get_if<RefractiveIndexTable>(&medium)) t->validate();
}

double SlabConfig::transit_time() const
{
    return thickness_delta / constants::speed_of_light;
}

SampledSpectrum slab_transfer(const SlabConfig& config, const FrequencyGrid& grid)
{
    return transfer(config, grid, 0.0, "slab_transfer");
}

SampledSpectrum shifted_transfer(const SlabConfig& config, const FrequencyGrid& grid)
{
    return transfer(config, grid, 1.0, "shifted_transfer");
}

PropagationResult propagate_pulse(const SampledSignal& input, const SlabConfig& config)
{
    input.validate();
    config.validate();
    const std::size_t n = input.values.size();
    const double peak = input.peak();
    if (peak == 0.0) throw Error("propagate_pulse: input is identically zero");
    if (input.values.front() != 0.0)
        throw Error("propagate_pulse: input must be front-limited (exactly zero before its start); sample 0 is "
                    "nonzero");

    const double floor = 1e-9 * peak;
    if (std::abs(input.values.back()) > floor) {
        std::ostringstream os;
        os << "propagate_pulse: input is " << std::abs(input.values.back()) / peak
           << " of its peak at the window end; enlarge the grid so it decays below 1e-9";
        throw Error(os.str());
    }
    std::size_t first = n, last = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(input.values[k]) > floor) {
            first = std::min(first, k);
            last = k;
        }
    }
    const double dt = input.grid.dt;
    const double delay = config.transit_time() / dt;
    const double support = static_cast<double>(last - first + 1);
    if (2.0 * support > static_cast<double>(n) || static_cast<double>(last) + delay >= static_cast<double>(n)) {
        std::ostringstream os;
        os << "propagate_pulse: signal support of " << support << " samples plus a delay of " << delay
           << " samples does not fit twice into " << n << " samples; enlarge the grid (e.g. count >= "
           << detail::next_power_of_two(static_cast<std::size_t>(std::ceil(2.0 * support + delay)) + 1)
           << ") to avoid wraparound";
        throw Error(os.str());
    }

    const SampledSpectrum F = forward_transform(input);
    PropagationResult r;
    r.transfer = slab_transfer(config, F.grid);
    r.output = apply(input, F, r.transfer);

    SlabConfig vacuum = config;
    vacuum.medium = ConstantIndex{};
    const SampledSignal reference = apply(input, F, slab_transfer(vacuum, F.grid));

    r.input_front = detect_front(input, 0.0);
    r.vacuum_front_time = r.input_front + config.transit_time();
    for (std::size_t k = 0; k < n; ++k) {
        if (reference.grid.time(k) >= r.vacuum_front_time - dt) break;
        r.noise_floor = std::max(r.noise_floor, std::abs(reference.values[k]));
    }
    r.front_arrival = detect_front(r.output, r.noise_floor);
    r.input_peak = envelope_peak(input);
    r.peak_arrival = envelope_peak(r.output);
    return r;
}

double detect_front(const SampledSignal& signal, double noise_floor)
{
    const double peak = signal.peak();
    if (peak == 0.0) return std::numeric_limits<double>::infinity();
    const double threshold = std::max(10.0 * noise_floor, 1e-9 * peak);
    for (std::size_t k = 0; k < signal.values.size(); ++k)
        if (std::abs(signal.values[k]) > threshold) return signal.grid.time(k);
    return std::numeric_limits<double>::infinity();
}

double envelope_peak(const SampledSignal& signal)
{
    signal.validate();
    const SampledSpectrum S = forward_transform(signal);
    std::vector<complex> a(S.values.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        const long m = S.grid.bin(j);
        a[j] = m > 0 ? 2.0 * S.values[j] : (m == 0 ? S.values[j] : complex(0.0));
    }
    const auto z = detail::to_time(S.grid, a, signal.grid.t0);
    std::size_t best = 0;
    for (std::size_t k = 1; k < z.size(); ++k)
        if (std::abs(z[k]) > std::abs(z[best])) best = k;
    double shift = 0.0;
    if (best > 0 && best + 1 < z.size()) {
        const double ym = std::abs(z[best - 1]), y0 = std::abs(z[best]), yp = std::abs(z[best + 1]);
        const double den = ym - 2.0 * y0 + yp;
        if (den < 0.0) shift = 0.5 * (ym - yp) / den;
    }
    return signal.grid.time(best) + shift * signal.grid.dt;
}

Velocities measure_velocities(const PropagationResult& result, double input_front, double input_peak,
                              const SlabConfig& config)
{
    Velocities v;
    const double front_delay = result.front_arrival - input_front;
    v.front_velocity = config.thickness_delta / front_delay;
    v.peak_transit_velocity = config.thickness_delta / (result.peak_arrival - input_peak);
    // Arrival times sit on the sample grid, so compare in samples.
    const double dt = result.output.grid.dt;
    v.causality_violation = std::round(front_delay / dt) < config.transit_time() / dt - 1.0 - 1e-9;
    return v;
}

double group_velocity(const Medium& medium, double omega)
{
    const double c = constants::speed_of_light;
    const double re = refractive_index(medium, omega).real();
    if (omega == 0.0) return c / re;
    const double h = 1e-6 * std::abs(omega);
    const double slope = (refractive_index(medium, omega + h).real() - refractive_index(medium, omega - h).real()) /
                         (2.0 * h);
    return c / (re + omega * slope);
}

CausalityReport relativistic_causality_check(const SlabConfig& config, const TimeGrid& grid,
                                             const CausalityOptions& options)
{
    grid.validate();
    return causality_verdict(shifted_transfer(config, grid.frequencies()), options);
}

SampledSignal front_limited_pulse(const TimeGrid& grid, double t_start, double rise, double centre, double width,
                                  double carrier)
{
    grid.validate();
    if (!(rise > 0.0) || !(width > 0.0)) throw Error("front_limited_pulse: rise and width must be positive");
    SampledSignal s{grid, std::vector<double>(grid.count, 0.0)};
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double t = grid.time(k);
        if (t <= t_start) continue;
        const double u = (t - centre) / width;
        s.values[k] = smoothstep((t - t_start) / rise) * std::exp(-0.5 * u * u) * std::cos(carrier * (t - centre));
    }
    return s;
}

FrontDemo front_demo()
{
    FrontDemo d;
    d.medium.resonances.push_back({1.0, 0.1, 1.0});
    d.medium.plasma_omega_sq = 0.2;
    d.slab.thickness_delta = 5.0 * constants::speed_of_light;
    d.slab.medium = d.medium;
    d.grid = TimeGrid{0.0, 0.2, std::size_t{1} << 15};
    d.carrier = 1.09;
    const double start = 100.0;
    const double width = 300.0;
    d.input = front_limited_pulse(d.grid, start, 8.0, start + 3.5 * width, width, d.carrier);
    return d;
}

}  // namespace causal
