#pragma once

#include "causal/media.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace causal::cli {

// Index table text: '#' comments, three columns "omega n_real n_imag",
// omega >= 0 strictly increasing. A column of nan marks that part as absent.
struct IndexColumns
{
    std::vector<double> omega;
    std::vector<double> re;
    std::vector<double> im;
    bool has_re = true;
    bool has_im = true;
    std::string source;

    RefractiveIndexTable table(bool gain = false) const;
};

// Errors carry "name:line:column: message".
IndexColumns read_index_table(std::istream& in, const std::string& name);
IndexColumns read_index_table(const std::string& path);

// Key-value medium text: "resonance = omega,gamma,f" (repeatable) and
// "plasma_omega_sq = value"; '#' starts a comment. Inline specs use ';'
// between entries.
LorentzMedium read_medium(std::istream& in, const std::string& name);
LorentzMedium parse_inline_medium(const std::string& spec);

// A medium argument: an existing file (key-value medium or index table,
// told apart by the first data line) or an inline key-value spec.
Medium load_medium(const std::string& spec, bool gain_table = false);

struct ScharnhorstResult
{
    double coefficient_exact = 0.0;   // 1 / (k alpha^2)
    double coefficient_quoted = 1.5e6;  // rounded value in common use
    double ratio_exact = 0.0;          // coefficient_exact (L / lambda)^3
    double ratio_quoted = 0.0;
    double delta_c_over_c = 0.0;       // k alpha^2 (lambda / L)^4
};

// Lengths in cm. Defaults: Compton wavelength 3.9e-11 cm, k = 1e-2, alpha = 1/137.
ScharnhorstResult scharnhorst_ratio(double length, double wavelength = 3.9e-11, double k = 1e-2,
                                    double alpha = 1.0 / 137.0);

// Exit codes: 0 success, 1 error, 2 anticausal verdict or front violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace causal::cli
