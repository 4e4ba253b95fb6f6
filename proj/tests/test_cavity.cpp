// Multiemitter cavity transmission and its waveguide image: at delta = 0 the
// cavity with coupling g and mirror leakage kappa behaves like a lossless
// commensurate chain with Gamma_eff = g^2/(2 kappa) and sign-flipped
// detunings.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "wgqed/cavity.hpp"
#include "wgqed/rng.hpp"

using namespace wgqed;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("an empty resonant cavity transmits perfectly", "[cavity]") {
    const CavitySystem sys{1.0, 0.0, 0.0, {5.0}};
    CHECK(std::abs(cavity_transmission(sys) - cplx(1, 0)) < 1e-15);
}

TEST_CASE("cavity system validates its rates", "[cavity]") {
    CHECK_THROWS_AS(cavity_transmission(CavitySystem{0.0, 0.1, 0.0, {1.0}}), validation_error);
    CHECK_THROWS_AS(cavity_transmission(CavitySystem{1.0, -0.1, 0.0, {1.0}}), validation_error);
    CHECK_THROWS_AS(cavity_transmission(CavitySystem{1.0, 0.1, 0.0, {}}), validation_error);
}

TEST_CASE("identical atoms produce the collective linewidth N g^2 / (2 kappa)", "[cavity]") {
    // |t|^2 = Delta^2 / (Delta^2 + (N g^2 / 2 kappa)^2): half depth at the
    // collective width
    const double kappa = 0.7, g = 0.9;
    const std::size_t n = 5;
    const double width = static_cast<double>(n) * g * g / (2.0 * kappa);
    const CavitySystem at_width{kappa, g, 0.0, std::vector<double>(n, width)};
    CHECK_THAT(std::norm(cavity_transmission(at_width)), WithinAbs(0.5, 1e-12));

    const CavitySystem far{kappa, g, 0.0, std::vector<double>(n, 50.0 * width)};
    CHECK(std::norm(cavity_transmission(far)) > 0.99);
}

TEST_CASE("pairwise-opposite atom detunings restore unit cavity transmission", "[cavity]") {
    const CavitySystem sys{1.0, 0.5, 0.0, {0.8, -0.8, 2.0, -2.0}};
    CHECK(std::abs(cavity_transmission(sys) - cplx(1, 0)) < 1e-15);
}

TEST_CASE("an exactly resonant atom is a pole with limit t = 0", "[cavity]") {
    const CavitySystem sys{1.0, 0.5, 0.0, {0.0, 1.0}};
    CHECK(at_atomic_pole(sys));
    CHECK_THROWS_AS(cavity_transmission(sys), validation_error);
    CHECK_THROWS_AS(waveguide_correspondence(sys), validation_error);
    // with no coupling there is no pole to hit
    CHECK_FALSE(at_atomic_pole(CavitySystem{1.0, 0.0, 0.0, {0.0}}));
}

TEST_CASE("waveguide image matches the cavity transmission", "[cavity]") {
    DrawStream draws(41);
    for (int k = 0; k < 200; ++k) {
        CavitySystem sys;
        sys.kappa = draws.uniform(0.2, 2.0);
        sys.g = draws.uniform(0.05, 1.5);
        sys.cavity_detuning = 0.0;
        const std::size_t n = 1 + static_cast<std::size_t>(draws.index(6));
        sys.atom_detunings.resize(n);
        for (double& d : sys.atom_detunings) {
            d = draws.uniform(-4.0, 4.0);
            if (d == 0.0) d = 0.5;
        }
        const cplx direct = cavity_transmission(sys);
        const ScatteringResult image = waveguide_correspondence(sys);
        CHECK(std::abs(direct - image.t) < 1e-12);
    }
}

TEST_CASE("waveguide image requires a resonant cavity", "[cavity]") {
    CHECK_THROWS_AS(waveguide_correspondence(CavitySystem{1.0, 0.5, 0.3, {1.0}}),
                    validation_error);
}

TEST_CASE("single atom at the collective width transmits half the power both ways",
          "[cavity]") {
    const double kappa = 1.1, g = 0.8;
    const double width = g * g / (2.0 * kappa);
    const CavitySystem sys{kappa, g, 0.0, {width}};
    CHECK_THAT(std::norm(cavity_transmission(sys)), WithinAbs(0.5, 1e-12));
    CHECK_THAT(waveguide_correspondence(sys).transmittance(), WithinAbs(0.5, 1e-12));
}

TEST_CASE("parity dichotomy carries over to the cavity", "[cavity]") {
    // even: pairs cancel, t = 1; odd: the leftover atom alone sets t
    const CavitySystem even{0.9, 0.6, 0.0, {1.4, -1.4}};
    CHECK(std::abs(cavity_transmission(even) - cplx(1, 0)) < 1e-12);

    const double d0 = 0.45;
    const CavitySystem odd{0.9, 0.6, 0.0, {1.4, -1.4, d0}};
    const CavitySystem single{0.9, 0.6, 0.0, {d0}};
    CHECK(std::abs(cavity_transmission(odd) - cavity_transmission(single)) < 1e-12);
}

TEST_CASE("cavity transmission never exceeds unit magnitude", "[cavity]") {
    DrawStream draws(42);
    for (int k = 0; k < 200; ++k) {
        CavitySystem sys;
        sys.kappa = draws.uniform(0.05, 3.0);
        sys.g = draws.uniform(0.0, 2.0);
        sys.cavity_detuning = draws.uniform(-5.0, 5.0);
        const std::size_t n = 1 + static_cast<std::size_t>(draws.index(5));
        sys.atom_detunings.resize(n);
        for (double& d : sys.atom_detunings) {
            d = draws.uniform(-4.0, 4.0);
            if (d == 0.0) d = 1.0;
        }
        CHECK(std::abs(cavity_transmission(sys)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("empty cavity image transmits without scattering", "[cavity]") {
    const ScatteringResult image = waveguide_correspondence(CavitySystem{1.0, 0.0, 0.0, {3.0}});
    CHECK(image.t == cplx(1, 0));
    CHECK(image.r == cplx(0, 0));
}
