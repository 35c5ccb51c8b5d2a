#pragma once

#include "causal/causality.hpp"
#include "causal/grid.hpp"
#include "causal/media.hpp"

namespace causal {

// A slab of thickness delta (cm) in vacuum, lit at normal incidence.
// Only unit transmission at the faces is modeled.
struct SlabConfig
{
    double thickness_delta = 0.0;
    Medium medium = ConstantIndex{};
    bool transmission_unity = true;

    void validate() const;
    double transit_time() const;  // delta / c
};

// G(w) = exp(i w n(w) delta / c) on a two-sided grid.
SampledSpectrum slab_transfer(const SlabConfig& config, const FrequencyGrid& grid);
// The same with the vacuum delay removed: exp(i w (n(w) - 1) delta / c).
SampledSpectrum shifted_transfer(const SlabConfig& config, const FrequencyGrid& grid);

struct PropagationResult
{
    SampledSignal output;
    SampledSpectrum transfer;
    double input_front = 0.0;
    double input_peak = 0.0;         // envelope maximum of the input
    double front_arrival = 0.0;
    double peak_arrival = 0.0;       // envelope maximum of the output
    double vacuum_front_time = 0.0;  // input_front + delta / c
    double noise_floor = 0.0;        // pre-front level of a matched vacuum run
};

// The input must start with exact zeros, fall below 1e-9 of its peak at
// both ends, and occupy at most half the window after the delay delta / c.
PropagationResult propagate_pulse(const SampledSignal& input, const SlabConfig& config);

// Time of the first sample above max(10 noise_floor, 1e-9 peak); +infinity
// for an all-zero signal.
double detect_front(const SampledSignal& signal, double noise_floor);

// Time of the maximum of |analytic signal|, refined by a parabola through
// the three samples around it.
double envelope_peak(const SampledSignal& signal);

struct Velocities
{
    double front_velocity = 0.0;         // cm/s
    double peak_transit_velocity = 0.0;  // cm/s, may exceed c or be negative
    // Front delay shorter than delta / c by more than one sample.
    bool causality_violation = false;
};

Velocities measure_velocities(const PropagationResult& result, double input_front, double input_peak,
                              const SlabConfig& config);

// c / (Re n + w d(Re n)/dw) by central difference with step 1e-6 w.
double group_velocity(const Medium& medium, double omega);

// Verdict on the impulse response of shifted_transfer: leakage before
// tau = 0 means a disturbance outran the vacuum front.
CausalityReport relativistic_causality_check(const SlabConfig& config, const TimeGrid& grid,
                                             const CausalityOptions& options = {});

// Smooth-onset carrier pulse, identically zero before t_start:
//   s((t - t_start) / rise) exp(-(t - centre)^2 / (2 width^2)) cos(carrier (t - centre))
// where s is the C^10 smoothstep.
SampledSignal front_limited_pulse(const TimeGrid& grid, double t_start, double rise, double centre, double width,
                                  double carrier);

// Single resonance (w0 = 1, gamma = 0.1, f = 1, wp^2 = 0.2) with delta / c
// = 5 s, and a pulse whose carrier sits in the anomalous band where the
// group velocity exceeds c.
struct FrontDemo
{
    SlabConfig slab;
    LorentzMedium medium;
    TimeGrid grid;
    double carrier = 0.0;
    SampledSignal input;
};

FrontDemo front_demo();

}  // namespace causal
