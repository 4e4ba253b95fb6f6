#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/transfer.hpp"
#include "test_support.hpp"

using namespace wgqed;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("build_chain accepts a minimal resonant atom", "[core]") {
    const EmitterChain chain = build_chain(1.0, 0.0, {0.0}, {pi});
    CHECK(chain.size() == 1);
    CHECK(chain.gamma() == 1.0);
    CHECK(chain.gamma0() == 0.0);
    CHECK(chain.detunings()[0] == 0.0);
    CHECK(chain.phases()[0] == pi);
}

TEST_CASE("build_chain accepts the critical-coupling two-atom configuration", "[core]") {
    // s = 4 split around the reference, gamma0 = gamma, kl = 5*pi/6
    const EmitterChain chain = build_chain(1.0, 1.0, {+2.0, -2.0}, {5 * pi / 6, 5 * pi / 6});
    CHECK(chain.size() == 2);
    CHECK(chain.gamma0() == chain.gamma());
}

TEST_CASE("build_chain rejects invalid parameters naming the field", "[core]") {
    CHECK_THROWS_MATCHES(build_chain(0.0, 0.0, {0.0}, {0.0}), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("gamma")));
    CHECK_THROWS_MATCHES(build_chain(-1.0, 0.0, {0.0}, {0.0}), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("gamma")));
    CHECK_THROWS_MATCHES(build_chain(1.0, -0.5, {0.0}, {0.0}), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("gamma0")));
    CHECK_THROWS_MATCHES(build_chain(1.0, 0.0, {0.0, 1.0}, {0.0}), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("length")));
    CHECK_THROWS_AS(build_chain(1.0, 0.0, {}, {}), validation_error);
}

TEST_CASE("scaled detunings follow (probe - d + i*gamma0)/gamma", "[core]") {
    const std::vector<cplx> resonant =
        scaled_detunings(build_chain(1.0, 0.0, {0.0}, {pi}), ProbeDetuning{0.0});
    CHECK(resonant[0] == cplx(0.0, 0.0));

    const std::vector<cplx> lossy =
        scaled_detunings(build_chain(1.0, 1.0, {0.0}, {pi}), ProbeDetuning{0.0});
    CHECK(lossy[0] == cplx(0.0, 1.0));

    // gamma = 2, d = 1, probe = 3: (3 - 1 + 0i)/2 = 1
    const std::vector<cplx> scaled =
        scaled_detunings(build_chain(2.0, 0.0, {1.0}, {pi}), ProbeDetuning{3.0});
    CHECK(scaled[0] == cplx(1.0, 0.0));

    // order preserved
    const std::vector<cplx> many =
        scaled_detunings(build_chain(1.0, 0.5, {1.0, -2.0, 0.25}, {0.0, 0.0, 0.0}),
                         ProbeDetuning{0.5});
    REQUIRE(many.size() == 3);
    CHECK(many[0] == cplx(-0.5, 0.5));
    CHECK(many[1] == cplx(2.5, 0.5));
    CHECK(many[2] == cplx(0.25, 0.5));

    CHECK_THROWS_AS(scaled_detunings(build_chain(1.0, 0.0, {0.0}, {0.0}),
                                     ProbeDetuning{std::nan("")}),
                    validation_error);
}

TEST_CASE("scattering results expose consistent derived intensities", "[core]") {
    const ScatteringResult res{cplx(0.6, 0.0), cplx(0.0, 0.8), false};
    CHECK_THAT(res.reflectance(), WithinAbs(0.36, 1e-15));
    CHECK_THAT(res.transmittance(), WithinAbs(0.64, 1e-15));
    CHECK_THAT(res.loss(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("transfer matrices multiply and report determinants", "[core]") {
    const Transfer2x2 id = Transfer2x2::identity();
    CHECK(id.det() == cplx(1.0, 0.0));
    const Transfer2x2 a{cplx(1, 1), cplx(0, 2), cplx(3, 0), cplx(1, -1)};
    const Transfer2x2 b{cplx(0, 1), cplx(2, 0), cplx(1, 0), cplx(0, -2)};
    const Transfer2x2 ab = a * b;
    CHECK(ab.m11 == a.m11 * b.m11 + a.m12 * b.m21);
    CHECK(ab.m22 == a.m21 * b.m12 + a.m22 * b.m22);
    const Transfer2x2 ida = id * a;
    CHECK(ida.m11 == a.m11);
    CHECK(ida.m12 == a.m12);
    CHECK(ida.m21 == a.m21);
    CHECK(ida.m22 == a.m22);
}

TEST_CASE("amplitudes are invariant under a global rescaling of all rates", "[core]") {
    // the model is dimensionless: (gamma, gamma0, detunings, probe) -> c * (...)
    DrawStream draws(11);
    for (int k = 0; k < 40; ++k) {
        const EmitterChain chain = wgqed_test::random_chain(draws, 6, k % 3 == 0);
        const double probe = draws.uniform(-4.0, 4.0);
        const double c = draws.uniform(0.1, 10.0);
        std::vector<double> dets(chain.detunings().begin(), chain.detunings().end());
        for (double& d : dets) d *= c;
        const EmitterChain scaled(c * chain.gamma(), c * chain.gamma0(), dets,
                                  {chain.phases().begin(), chain.phases().end()});
        const ScatteringResult base = chain_scatter(chain, ProbeDetuning{probe});
        const ScatteringResult same = chain_scatter(scaled, ProbeDetuning{c * probe});
        CHECK(std::abs(base.r - same.r) < 1e-12);
        CHECK(std::abs(base.t - same.t) < 1e-12);
    }
}

TEST_CASE("amplitudes are periodic in every gap phase mod 2*pi", "[core]") {
    DrawStream draws(12);
    for (int k = 0; k < 40; ++k) {
        const EmitterChain chain = wgqed_test::random_chain(draws, 6, k % 2 == 0);
        const double probe = draws.uniform(-4.0, 4.0);
        std::vector<double> phases(chain.phases().begin(), chain.phases().end());
        phases[draws.index(phases.size())] += 2.0 * pi;
        const EmitterChain wound(chain.gamma(), chain.gamma0(),
                                 {chain.detunings().begin(), chain.detunings().end()}, phases);
        const ScatteringResult base = chain_scatter(chain, ProbeDetuning{probe});
        const ScatteringResult same = chain_scatter(wound, ProbeDetuning{probe});
        CHECK(std::abs(base.r - same.r) < 1e-12);
        CHECK(std::abs(base.t - same.t) < 1e-12);
    }
}

TEST_CASE("sweep grids validate and enumerate inclusively", "[core]") {
    const SweepGrid grid(-5.0, 5.0, 11);
    CHECK(grid.value(0) == -5.0);
    CHECK(grid.value(10) == 5.0);
    CHECK_THAT(grid.value(5), WithinAbs(0.0, 1e-15));
    const auto vals = grid.values();
    REQUIRE(vals.size() == 11);
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] > vals[i - 1]);

    CHECK_THROWS_AS(SweepGrid(0.0, 1.0, 1), validation_error);
    CHECK_THROWS_AS(SweepGrid(1.0, 1.0, 5), validation_error);
    CHECK_THROWS_AS(SweepGrid(2.0, 1.0, 5), validation_error);
}
