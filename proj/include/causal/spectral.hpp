#pragma once

#include "causal/grid.hpp"

#include <functional>
#include <vector>

namespace causal {

// Continuum-scaled transforms:
//   G(w) = integral g(t) exp(+i w t) dt        ~ dt * sum_k g_k exp(+i w t_k)
//   g(t) = (1/2pi) integral G(w) exp(-i w t) dw ~ (dw/2pi) * sum_j G_j exp(-i w_j t)
SampledSpectrum forward_transform(const SampledSignal& signal);

// Requires a two-sided Hermitian spectrum; the error names the worst bin.
SampledSignal inverse_transform(const SampledSpectrum& spectrum);

enum class ExtendMode {
    even_count,  // M positive bins -> 2(M-1) bins; the top bin becomes -Nyquist
    odd_count,   // M positive bins -> 2M-1 bins, every bin paired
};

// Builds G(-w) = conj(G(w)) from a one-sided grid starting at w = 0.
SampledSpectrum hermitian_extend(const SampledSpectrum& positive_half,
                                 ExtendMode mode = ExtendMode::even_count);

// |E_t - E_w| / E_t with E_t = integral |g|^2 dt and E_w = (1/2pi) integral |G|^2 dw.
double parseval_residual(const SampledSignal& signal, const SampledSpectrum& spectrum);

// Lower-level building blocks shared by the other modules. No symmetry
// checks; complex in, complex out.
namespace detail {

// Unscaled DFT: out_j = sum_k in_k exp(sign * 2pi i jk / N), sign = +1 or -1.
std::vector<complex> dft(const std::vector<complex>& in, int sign);

// (dw/2pi) sum_j G_j exp(-i w_j t_k) for t_k = t0 + k*grid.dt().
std::vector<complex> to_time(const FrequencyGrid& grid, const std::vector<complex>& values, double t0);

// dt sum_k g_k exp(+i w_j t_k) on grid.frequencies().
std::vector<complex> to_frequency(const TimeGrid& grid, const std::vector<complex>& values);

// y_j = sum_k x_k * kernel(k - j), evaluated by zero-padded FFT convolution.
std::vector<complex> correlate(const std::vector<complex>& x, const std::function<complex(long)>& kernel);

std::size_t next_power_of_two(std::size_t n);

}  // namespace detail

}  // namespace causal
