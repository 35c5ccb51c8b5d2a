#pragma once

#include "causal/grid.hpp"

#include <string>
#include <variant>
#include <vector>

namespace causal {

struct Resonance
{
    double omega = 0.0;     // rad/s, >= 0 (0 gives a free-carrier term)
    double gamma = 0.0;     // rad/s, > 0
    double strength = 0.0;  // oscillator strength f, >= 0
};

// n^2 = 1 + wp^2 sum_j f_j / (w_j^2 - w^2 - i g_j w), Gaussian units.
struct LorentzMedium
{
    std::vector<Resonance> resonances;
    double plasma_omega_sq = 0.0;  // 4 pi N e^2 / m

    void validate() const;
    double highest_resonance() const;
    // C in n - 1 ~ -C / w^2 as w -> infinity: wp^2 sum f_j / 2.
    double high_frequency_coefficient() const;
};

// Tabulated n(w) at strictly increasing abscissae. Passive tables need
// sign(w) Im n >= 0 at every row; gain media must set gain = true.
struct RefractiveIndexTable
{
    std::vector<double> omega;
    std::vector<complex> n;
    std::string source;
    bool gain = false;

    void validate() const;
    // Uniform abscissae starting at 0 give a one-sided grid; otherwise throws.
    FrequencyGrid grid() const;
    // Linear interpolation in complex n. A table starting at w = 0 also
    // answers for -w via n(-w) = conj(n(w)). Outside the hull: error.
    complex at(double w) const;
};

// Frequency-independent n. Handy for vacuum (n = 1) and textbook checks.
struct ConstantIndex
{
    complex n = 1.0;
};

using Medium = std::variant<LorentzMedium, RefractiveIndexTable, ConstantIndex>;

complex lorentz_index(const LorentzMedium& medium, double omega);
complex refractive_index(const Medium& medium, double omega);

// High-frequency free-electron susceptibility -N e^2 / (m w^2); N in cm^-3.
double free_electron_chi(double number_density, double omega);

// n = sqrt(1 + 4 pi chi) with Re n >= 0, and its inverse.
complex chi_to_index(complex chi);
complex index_to_chi(complex n);

// alpha = 2 n_i w / c, in cm^-1.
double absorption_coefficient(double n_imag, double omega);

RefractiveIndexTable sample_index(const LorentzMedium& medium, const FrequencyGrid& grid);
RefractiveIndexTable sample_index(const RefractiveIndexTable& table, const FrequencyGrid& grid);

}  // namespace causal
