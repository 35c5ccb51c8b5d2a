#pragma once

#include "causal/grid.hpp"

#include <array>
#include <string>
#include <vector>

namespace causal {

enum class Verdict { causal, anticausal, inconclusive };

std::string to_string(Verdict v);

struct LineNorm
{
    double y = 0.0;
    double norm = 0.0;  // integral |G(x + iy)|^2 dx over the sampled band
};

struct CausalityReport
{
    double anticausal_leakage = 0.0;  // ||g 1(t<0)|| / ||g||
    double l2_norm = 0.0;             // integral |G|^2 dw
    std::vector<LineNorm> uhp_decay;
    bool decay_monotone = true;       // line norms nonincreasing within 1e-9
    Verdict verdict = Verdict::causal;
};

struct CausalityOptions
{
    double leak_tol = 1e-6;
    double anticausal_threshold = 1e-2;
    std::vector<double> decay_y = {0.0, 0.5, 1.0, 2.0};
};

// Causal rational model of the outer band,
//   G(w) ~ c0 + sum_{p=1..4} c_p (L / (L - i w))^p,   L = W / 64,
// fitted by least squares on W/2 <= w < W (W the top positive bin). Each
// term has a known causal time response, so it can be removed before the
// finite inverse DFT and restored exactly.
struct CausalTail
{
    double lambda = 1.0;
    std::array<double, 5> c{};

    complex spectrum(complex z) const;         // terms p >= 1 at complex frequency z
    double kernel(double t, double dt) const;  // their time response (delta term excluded)
};

CausalTail fit_causal_tail(const SampledSpectrum& G);

// Impulse response g(t) on the centered window t_k = (k - N/2) dt, with the
// tail terms added back analytically. The constant c0 stays in the DFT part
// and appears as a spike c0/dt at t = 0.
SampledSignal causal_response(const SampledSpectrum& G);

CausalityReport causality_verdict(const SampledSpectrum& G, const CausalityOptions& options = {});

// G(x + iy), the transform of exp(-y t) g(t) over t >= 0. Errors for y < 0,
// and for anticausal G unless allow_anticausal is set.
SampledSpectrum analytic_continue(const SampledSpectrum& G, double y, bool allow_anticausal = false);

// integral |G(x + iy)|^2 dx for each y.
std::vector<LineNorm> line_norms(const SampledSpectrum& G, const std::vector<double>& y_values,
                                 bool allow_anticausal = false);

struct EdgePoint
{
    double y = 0.0;
    double sup = 0.0;  // max(|G(x + iy)|, |G(-x + iy)|)
};

struct DecayProfile
{
    double x_probe = 0.0;
    std::vector<EdgePoint> near;  // at x_probe
    std::vector<EdgePoint> far;   // at 2 x_probe
    double sup_near = 0.0;
    double sup_far = 0.0;
    double ratio = 0.0;  // sup_far / sup_near (0 when both vanish)
    bool decreasing = true;
};

DecayProfile uhp_decay_profile(const SampledSpectrum& G, const std::vector<double>& y_values, double x_probe,
                               bool allow_anticausal = false);

}  // namespace causal
