#pragma once

#include "causal/grid.hpp"

#include <optional>

namespace causal {

// One subtraction at w0, or at infinity when omega0 is empty.
struct SubtractionSpec
{
    std::optional<double> omega0;
    // G(w0); interpolated from the samples when absent. For w0 = infinity
    // only the real part is used and, when absent, is fitted from the band edge.
    std::optional<complex> g_at_omega0;
    // Im G(inf) for the w0 = infinity form.
    double im_at_infinity = 0.0;
};

struct SubtractionResult
{
    SampledFunction real_part;
    complex g0;              // subtraction constant actually used
    double edge_ratio = 0.0; // |H_edge|^2 |w_edge| over integral |H|^2 dw
};

// Re G(w) = Re G(w0) + (w - w0) K[Im H](w),  H = (G - G(w0)) / (w - w0),
// with K the conjugate-function operator of hilbert.hpp. For w0 = infinity:
// Re G(w) = Re G(inf) + K[Im G - Im G(inf)](w).
SubtractionResult subtracted_dispersion(const SampledSpectrum& G, const SubtractionSpec& spec);

}  // namespace causal
