#include "causal/error.hpp"
#include "causal/grid.hpp"
#include "causal/kramers_kronig.hpp"
#include "causal/media.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace causal;

namespace {

// n from the real and imaginary parts of eps, without std::sqrt(complex).
complex lorentz_oracle(double w, double w0, double gamma, double f, double wp2)
{
    const double a = w0 * w0 - w * w;
    const double b = gamma * w;
    const double d = a * a + b * b;
    const double er = 1.0 + wp2 * f * a / d;
    const double ei = wp2 * f * b / d;
    const double mod = std::hypot(er, ei);
    const double nr = std::sqrt(0.5 * (mod + er));
    const double ni = ei / (2.0 * nr);
    return {nr, ni};
}

LorentzMedium demo_medium()
{
    LorentzMedium m;
    m.resonances.push_back({1.0, 0.1, 1.0});
    m.plasma_omega_sq = 0.2;
    return m;
}

LorentzMedium random_medium(gen::Source& src)
{
    LorentzMedium m;
    const int count = src.integer(1, 3);
    double top = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto r = src.resonance();
        m.resonances.push_back({r.omega, r.gamma, r.strength});
        top = std::max(top, r.omega);
    }
    m.plasma_omega_sq = src.uniform(0.01, 1.0) * top * top;
    return m;
}

bool mentions(const Error& e, const std::string& what) { return std::string(e.what()).find(what) != std::string::npos; }

}  // namespace

TEST_SUITE("lorentz_index")
{
    TEST_CASE("vacuum is exactly 1")
    {
        const LorentzMedium vacuum;
        for (double w : {0.0, 0.3, 1.0, 1e6, -7.0}) CHECK(lorentz_index(vacuum, w) == complex(1.0, 0.0));
    }

    TEST_CASE("matches the real-arithmetic oracle")
    {
        const auto m = demo_medium();
        for (double w = 0.0; w < 30.0; w += 0.0137) {
            const complex n = lorentz_index(m, w);
            const complex o = lorentz_oracle(w, 1.0, 0.1, 1.0, 0.2);
            CHECK(std::abs(n - o) < 1e-14);
        }
    }

    TEST_CASE("high-frequency falloff")
    {
        const auto m = demo_medium();
        const double w = 100.0 * m.highest_resonance();
        CHECK(std::abs(lorentz_index(m, w) - 1.0) < 1.1 * 0.2 / (2.0 * w * w));
    }

    TEST_CASE("anomalous dispersion and absorption at resonance")
    {
        const auto m = demo_medium();
        const double h = 1e-5;
        CHECK(lorentz_index(m, 1.0).imag() > 0.0);
        const double slope = (lorentz_index(m, 1.0 + h).real() - lorentz_index(m, 1.0 - h).real()) / (2.0 * h);
        CHECK(slope < 0.0);
    }

    TEST_CASE("invalid media")
    {
        LorentzMedium m = demo_medium();
        m.resonances[0].gamma = 0.0;
        CHECK_THROWS_AS(m.validate(), Error);
        m.resonances[0].gamma = 0.1;
        m.resonances[0].strength = -1.0;
        CHECK_THROWS_AS(m.validate(), Error);
        m = demo_medium();
        m.plasma_omega_sq = -0.2;
        CHECK_THROWS_AS(m.validate(), Error);
    }

    TEST_CASE("free-carrier term diverges only at zero")
    {
        LorentzMedium m;
        m.resonances.push_back({0.0, 0.5, 1.0});
        m.plasma_omega_sq = 1.0;
        CHECK_NOTHROW(lorentz_index(m, 0.1));
        CHECK_THROWS_AS(lorentz_index(m, 0.0), Error);
    }
}

TEST_SUITE("free_electron_chi")
{
    TEST_CASE("values and scaling")
    {
        CHECK(free_electron_chi(0.0, 1e15) == 0.0);
        const double a = free_electron_chi(1e20, 3e15);
        const double b = free_electron_chi(1e20, 6e15);
        CHECK(b == doctest::Approx(a / 4.0).epsilon(1e-14));
        const double oracle = -1e22 * 4.8032e-10 * 4.8032e-10 / (9.1094e-28 * 1e32);
        CHECK(free_electron_chi(1e22, 1e16) == doctest::Approx(oracle).epsilon(1e-14));
        CHECK(free_electron_chi(1e22, 1e16) == doctest::Approx(-2.53e-2).epsilon(2e-3));
    }

    TEST_CASE("zero frequency is an error")
    {
        CHECK_THROWS_AS(free_electron_chi(1e22, 0.0), Error);
    }
}

TEST_SUITE("chi_to_index")
{
    TEST_CASE("vacuum and the free-electron example")
    {
        CHECK(chi_to_index(0.0) == complex(1.0, 0.0));
        const complex n = chi_to_index(free_electron_chi(1e22, 1e16));
        CHECK(n.imag() == 0.0);
        CHECK(n.real() == doctest::Approx(std::sqrt(1.0 - 4.0 * pi * 2.5326e-2)).epsilon(1e-4));
        CHECK(n.real() == doctest::Approx(0.826).epsilon(1e-3));
    }

    TEST_CASE("roundtrip on Lorentz samples")
    {
        const auto m = demo_medium();
        for (double w = 0.0; w < 10.0; w += 0.01) {
            const complex n = lorentz_index(m, w);
            CHECK(std::abs(chi_to_index(index_to_chi(n)) - n) < 1e-14);
        }
    }

    TEST_CASE("negative real permittivity is ambiguous")
    {
        try {
            chi_to_index(-1.0 / (2.0 * pi));
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(mentions(e, "ambiguous"));
        }
    }
}

TEST_SUITE("absorption_coefficient")
{
    TEST_CASE("values and linearity")
    {
        CHECK(absorption_coefficient(0.0, 1e15) == 0.0);
        CHECK(absorption_coefficient(1e-3, 1e15) == doctest::Approx(2e12 / 2.99792458e10).epsilon(1e-12));
        CHECK(absorption_coefficient(1e-3, 1e15) == doctest::Approx(66.7).epsilon(1e-3));
        CHECK(absorption_coefficient(2e-3, 1e15) == doctest::Approx(2.0 * absorption_coefficient(1e-3, 1e15)));
        CHECK_THROWS_AS(absorption_coefficient(1e-3, -1.0), Error);
    }
}

TEST_SUITE("sample_index")
{
    TEST_CASE("Lorentz model sampled pointwise")
    {
        const auto m = demo_medium();
        const auto grid = FrequencyGrid::positive(0.01, 1000);
        const auto t = sample_index(m, grid);
        REQUIRE(t.n.size() == 1000);
        for (std::size_t j = 0; j < grid.count(); ++j) CHECK(t.n[j] == lorentz_index(m, grid.omega(j)));
        CHECK(t.grid().same_as(grid));
    }

    TEST_CASE("resampling onto its own grid is the identity")
    {
        const auto grid = FrequencyGrid::positive(0.013, 777);
        const auto t = sample_index(demo_medium(), grid);
        const auto u = sample_index(t, grid);
        for (std::size_t j = 0; j < grid.count(); ++j) CHECK(u.n[j] == t.n[j]);
    }

    TEST_CASE("midpoints give the mean of the neighbours")
    {
        const auto grid = FrequencyGrid::positive(0.05, 200);
        const auto t = sample_index(demo_medium(), grid);
        for (std::size_t j = 0; j + 1 < grid.count(); ++j) {
            const complex mid = t.at(0.5 * (t.omega[j] + t.omega[j + 1]));
            CHECK(std::abs(mid - 0.5 * (t.n[j] + t.n[j + 1])) < 1e-14);
        }
    }

    TEST_CASE("negative frequencies come from symmetry")
    {
        const auto t = sample_index(demo_medium(), FrequencyGrid::positive(0.05, 200));
        CHECK(t.at(-0.35) == std::conj(t.at(0.35)));
    }

    TEST_CASE("extrapolation is an error naming the covered range")
    {
        const auto t = sample_index(demo_medium(), FrequencyGrid::positive(0.05, 200));
        try {
            t.at(12.0);
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(mentions(e, "[0, 9.95]"));
        }
        CHECK_THROWS_AS(sample_index(t, FrequencyGrid::positive(0.1, 200)), Error);
    }

    TEST_CASE("table validation")
    {
        RefractiveIndexTable t;
        t.omega = {0.0, 1.0, 2.0};
        t.n = {1.0, complex(1.1, 0.1), complex(1.2, -0.01)};
        CHECK_THROWS_AS(t.validate(), Error);
        t.gain = true;
        CHECK_NOTHROW(t.validate());
        t.omega = {0.0, 2.0, 1.0};
        CHECK_THROWS_AS(t.validate(), Error);
        t.omega = {0.0, 1.0, 2.5};
        t.gain = true;
        CHECK_THROWS_AS(t.grid(), Error);
    }
}

TEST_SUITE("media properties")
{
    TEST_CASE("symmetry n(-w) = conj n(w) for random media")
    {
        gen::Source src(31u);
        for (int trial = 0; trial < 50; ++trial) {
            const auto m = random_medium(src);
            for (int k = 0; k < 40; ++k) {
                const double w = src.uniform(0.0, 20.0);
                CHECK(lorentz_index(m, -w) == std::conj(lorentz_index(m, w)));
            }
        }
    }

    TEST_CASE("passivity: Im n >= 0 for w >= 0")
    {
        gen::Source src(32u);
        for (int trial = 0; trial < 50; ++trial) {
            const auto m = random_medium(src);
            for (int k = 0; k < 200; ++k) CHECK(lorentz_index(m, src.uniform(0.0, 50.0)).imag() >= 0.0);
        }
    }

    TEST_CASE("high-frequency bound C / w^2 with C fitted at 10x the top resonance")
    {
        gen::Source src(33u);
        for (int trial = 0; trial < 50; ++trial) {
            const auto m = random_medium(src);
            const double w1 = 10.0 * m.highest_resonance();
            const double c = std::abs(lorentz_index(m, w1) - 1.0) * w1 * w1;
            CAPTURE(trial);
            CHECK(c == doctest::Approx(m.high_frequency_coefficient()).epsilon(0.05));
            for (double s = 1.0; s <= 100.0; s *= 1.17) {
                const double w = w1 * s;
                CHECK(std::abs(lorentz_index(m, w) - 1.0) * w * w <= c * (1.0 + 1e-9));
            }
        }
    }

    TEST_CASE("sampled Lorentz index is KK-consistent")
    {
        const auto grid = FrequencyGrid::positive(20.0 / 16383.0, 16384);
        const auto t = sample_index(demo_medium(), grid);
        SampledFunction ni{grid, std::vector<double>(grid.count())}, nr = ni;
        for (std::size_t j = 0; j < grid.count(); ++j) {
            nr.values[j] = t.n[j].real();
            ni.values[j] = t.n[j].imag();
        }
        CHECK(relative_l2(kk_real_from_imag(ni).values, nr, 0.1, 5.0) < 1e-2);
        CHECK(relative_l2(kk_imag_from_real(nr).values, ni, 0.1, 5.0) < 1e-2);
    }
}
