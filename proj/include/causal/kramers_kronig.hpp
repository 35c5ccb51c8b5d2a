#pragma once

#include "causal/grid.hpp"

#include <string>

namespace causal {

// Folded (positive-frequency) dispersion relations for a refractive index:
//   Re n(w) = Re n(inf) + (2/pi) P int_0^inf [v Im n(v) - w Im n(inf)] / (v^2 - w^2) dv
//   Im n(w) = -(2w/pi) P int_0^inf [Re n(v) - Re n(inf)] / (v^2 - w^2) dv
// Beyond the sampled band the numerator is continued as D / v^2 with D
// fitted over the last 5% of bins.
struct KKOptions
{
    // Input to kk_real_from_imag is alpha(v) = 2 v Im n / c (cm^-1).
    bool absorption_form = false;
    double re_at_infinity = 1.0;
    double im_at_infinity = 0.0;
};

struct KKResult
{
    SampledFunction values;
    // Input not decayed below 1e-3 of its peak at the band edge.
    bool truncated = false;
    double edge_ratio = 0.0;
    std::string warning;
};

KKResult kk_real_from_imag(const SampledFunction& n_imag, const KKOptions& options = {});
KKResult kk_imag_from_real(const SampledFunction& n_real, const KKOptions& options = {});

}  // namespace causal
