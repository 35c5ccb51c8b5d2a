// Regenerates the bundled fixtures: make_fixtures <directory>
#include "causal/grid.hpp"
#include "causal/media.hpp"

#include <cmath>
#include <cstdio>
#include <string>

using namespace causal;

namespace {

LorentzMedium single_resonance()
{
    LorentzMedium m;
    m.resonances.push_back({1.0, 0.1, 1.0});
    m.plasma_omega_sq = 0.2;
    return m;
}

FILE* open(const std::string& path)
{
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        std::perror(path.c_str());
        std::exit(1);
    }
    return f;
}

// Positive half of the default check grid (N = 2^14, dt = 0.1 s), +Nyquist included.
void write_table(const std::string& path, const char* title, double shift)
{
    const auto grid = TimeGrid::centered(0.1, std::size_t{1} << 14).frequencies();
    const auto m = single_resonance();
    FILE* f = open(path);
    std::fprintf(f, "# %s\n# omega_rad_per_s n_real n_imag\n", title);
    for (std::size_t j = grid.zero_index(); j <= grid.count(); ++j) {
        const double w = j < grid.count() ? grid.omega(j) : -grid.omega(0);
        const complex n = lorentz_index(m, w) - shift;
        std::fprintf(f, "%.17g %.17g %.17g\n", w, n.real(), n.imag());
    }
    std::fclose(f);
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string dir = argc > 1 ? argv[1] : "fixtures";

    FILE* f = open(dir + "/lorentz.medium");
    std::fprintf(f, "# single resonance, Gaussian units (rad/s)\nresonance = 1, 0.1, 1\nplasma_omega_sq = 0.2\n");
    std::fclose(f);

    write_table(dir + "/lorentz_table.txt", "single resonance w0 = 1, gamma = 0.1, f = 1, wp^2 = 0.2", 0.0);
    write_table(dir + "/lowered_table.txt", "same medium with n lowered by 0.1, so n(inf) = 0.9", 0.1);

    // Absorption only, for kk: 4096 bins over [0, 20].
    const auto grid = FrequencyGrid::positive(20.0 / 4095.0, 4096);
    f = open(dir + "/lorentz_imag_only.txt");
    std::fprintf(f, "# single resonance, n_imag only (n_real marked absent)\n# omega_rad_per_s n_real n_imag\n");
    for (std::size_t j = 0; j < grid.count(); ++j)
        std::fprintf(f, "%.17g nan %.17g\n", grid.omega(j), lorentz_index(single_resonance(), grid.omega(j)).imag());
    std::fclose(f);
    return 0;
}
