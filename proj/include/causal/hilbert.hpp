#pragma once

#include "causal/grid.hpp"

namespace causal {

enum class HilbertDirection { imag_from_real, real_from_imag };
enum class HilbertMethod { quadrature, fft };

// K[f](w) = (1/pi) P integral f(v) / (v - w) dv over the real line.
//
// The even and odd parts of the input each get a rational tail fitted over
// the outer tenth of the band, whose transform is added in closed form.
// Only the remainder is handled numerically, so band truncation stays small.
SampledFunction conjugate_function(const SampledFunction& f, HilbertMethod method);

struct HilbertResult
{
    SampledFunction values;      // FFT route
    SampledFunction quadrature;  // principal-value quadrature route
    double discrepancy = 0.0;    // relative L2 between routes, interior band
    bool inconclusive = false;   // discrepancy above 1e-2
};

// real_from_imag: Gr = K[Gi].  imag_from_real: Gi = -K[Gr].
HilbertResult hilbert_transform(const SampledFunction& input, HilbertDirection direction);

}  // namespace causal
