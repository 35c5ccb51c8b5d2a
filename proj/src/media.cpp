#include "causal/media.hpp"

#include "causal/constants.hpp"
#include "causal/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace causal {

void LorentzMedium::validate() const
{
    if (!std::isfinite(plasma_omega_sq) || plasma_omega_sq < 0.0)
        throw Error("lorentz medium: plasma_omega_sq must be finite and >= 0");
    for (std::size_t j = 0; j < resonances.size(); ++j) {
        const Resonance& r = resonances[j];
        std::ostringstream os;
        os << "lorentz medium: resonance " << j << ": ";
        if (!std::isfinite(r.omega) || r.omega < 0.0) throw Error(os.str() + "omega must be finite and >= 0");
        if (!std::isfinite(r.gamma) || r.gamma <= 0.0)
            throw Error(os.str() + "gamma must be > 0 (gamma = 0 puts a pole on the real axis)");
        if (!std::isfinite(r.strength) || r.strength < 0.0) throw Error(os.str() + "strength must be finite and >= 0");
    }
}

double LorentzMedium::highest_resonance() const
{
    double top = 0.0;
    for (const auto& r : resonances) top = std::max(top, r.omega);
    return top;
}

double LorentzMedium::high_frequency_coefficient() const
{
    double f = 0.0;
    for (const auto& r : resonances) f += r.strength;
    return 0.5 * plasma_omega_sq * f;
}

complex lorentz_index(const LorentzMedium& medium, double omega)
{
    if (omega < 0.0) return std::conj(lorentz_index(medium, -omega));
    complex sum = 0.0;
    for (const auto& r : medium.resonances) {
        if (r.strength == 0.0) continue;
        const complex den(r.omega * r.omega - omega * omega, -r.gamma * omega);
        if (den == complex(0.0)) throw Error("lorentz_index: a free-carrier term (omega_j = 0) diverges at omega = 0");
        sum += r.strength / den;
    }
    // Im n^2 >= 0 for omega > 0 and n^2 > 0 at omega = 0, so the principal
    // root is the branch continued from n(0) > 0.
    return std::sqrt(1.0 + medium.plasma_omega_sq * sum);
}

complex refractive_index(const Medium& medium, double omega)
{
    struct Visitor
    {
        double w;
        complex operator()(const LorentzMedium& m) const { return lorentz_index(m, w); }
        complex operator()(const RefractiveIndexTable& t) const { return t.at(w); }
        complex operator()(const ConstantIndex& c) const { return w < 0.0 ? std::conj(c.n) : c.n; }
    };
    return std::visit(Visitor{omega}, medium);
}

double free_electron_chi(double number_density, double omega)
{
    if (omega == 0.0 || !std::isfinite(omega))
        throw Error("free_electron_chi: omega must be finite and nonzero (the form is the high-frequency limit)");
    if (!(number_density >= 0.0)) throw Error("free_electron_chi: number density must be >= 0");
    const double e = constants::electron_charge;
    return -number_density * e * e / (constants::electron_mass * omega * omega);
}

complex chi_to_index(complex chi)
{
    const complex eps = 1.0 + 4.0 * pi * chi;
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) throw Error("chi_to_index: chi must be finite");
    if (eps.imag() == 0.0 && eps.real() < 0.0) {
        std::ostringstream os;
        os << "chi_to_index: 1 + 4 pi chi = " << eps.real() << " is negative real, so Re n = 0 and the branch is ambiguous";
        throw Error(os.str());
    }
    return std::sqrt(eps);
}

complex index_to_chi(complex n)
{
    return (n * n - 1.0) / (4.0 * pi);
}

double absorption_coefficient(double n_imag, double omega)
{
    if (omega < 0.0) throw Error("absorption_coefficient: omega must be >= 0");
    return 2.0 * n_imag * omega / constants::speed_of_light;
}

void RefractiveIndexTable::validate() const
{
    if (omega.size() != n.size()) throw Error("index table: omega and n columns differ in length");
    if (omega.size() < 2) throw Error("index table: need at least 2 rows");
    for (std::size_t k = 0; k < omega.size(); ++k) {
        std::ostringstream os;
        os << "index table";
        if (!source.empty()) os << " " << source;
        os << ": row " << k << " (omega = " << omega[k] << "): ";
        if (!std::isfinite(omega[k]) || !std::isfinite(n[k].real()) || !std::isfinite(n[k].imag()))
            throw Error(os.str() + "non-finite entry");
        if (k > 0 && !(omega[k] > omega[k - 1])) throw Error(os.str() + "omega must be strictly increasing");
        if (!gain && ((omega[k] > 0.0 && n[k].imag() < 0.0) || (omega[k] < 0.0 && n[k].imag() > 0.0)))
            throw Error(os.str() + "Im n has the gain sign; flag the table as a gain medium if that is intended");
    }
}

FrequencyGrid RefractiveIndexTable::grid() const
{
    validate();
    const std::size_t count = omega.size();
    const double h = (omega.back() - omega.front()) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        if (std::abs(omega[k] - (omega.front() + static_cast<double>(k) * h)) > 1e-6 * h) {
            std::ostringstream os;
            os << "index table: row " << k << " breaks uniform spacing (omega = " << omega[k] << ", expected "
               << omega.front() + static_cast<double>(k) * h << ")";
            throw Error(os.str());
        }
    }
    if (std::abs(omega.front()) <= 1e-9 * h) return FrequencyGrid::positive(h, count);
    const double half = static_cast<double>(count / 2);
    if (std::abs(omega.front() + half * h) <= 1e-6 * h) return FrequencyGrid::two_sided(h, count);
    throw Error("index table: uniform rows must start at omega = 0 or at -(count/2) domega");
}

complex RefractiveIndexTable::at(double w) const
{
    if (w < 0.0 && omega.front() >= 0.0 && -w >= omega.front() && -w <= omega.back()) return std::conj(at(-w));
    if (!(w >= omega.front() && w <= omega.back())) {
        std::ostringstream os;
        os << "index table";
        if (!source.empty()) os << " " << source;
        os << ": omega = " << w << " lies outside the tabulated range [" << omega.front() << ", " << omega.back()
           << "]";
        if (omega.front() >= 0.0) os << " (negative frequencies are served by symmetry)";
        os << "; extrapolation is not supported";
        throw Error(os.str());
    }
    const auto it = std::upper_bound(omega.begin(), omega.end(), w);
    if (it == omega.end()) return n.back();
    const std::size_t hi = static_cast<std::size_t>(it - omega.begin());
    const std::size_t lo = hi - 1;
    const double span = omega[hi] - omega[lo];
    const double f = (w - omega[lo]) / span;
    if (f <= 1e-12) return n[lo];
    if (f >= 1.0 - 1e-12) return n[hi];
    return (1.0 - f) * n[lo] + f * n[hi];
}

RefractiveIndexTable sample_index(const LorentzMedium& medium, const FrequencyGrid& grid)
{
    medium.validate();
    grid.validate();
    RefractiveIndexTable t;
    t.source = "lorentz model";
    t.omega.resize(grid.count());
    t.n.resize(grid.count());
    for (std::size_t j = 0; j < grid.count(); ++j) {
        t.omega[j] = grid.omega(j);
        t.n[j] = lorentz_index(medium, t.omega[j]);
    }
    return t;
}

RefractiveIndexTable sample_index(const RefractiveIndexTable& table, const FrequencyGrid& grid)
{
    table.validate();
    grid.validate();
    RefractiveIndexTable t;
    t.source = table.source;
    t.gain = table.gain;
    t.omega.resize(grid.count());
    t.n.resize(grid.count());
    for (std::size_t j = 0; j < grid.count(); ++j) {
        t.omega[j] = grid.omega(j);
        t.n[j] = table.at(t.omega[j]);
    }
    return t;
}

}  // namespace causal
