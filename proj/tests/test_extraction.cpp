#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcorr/extraction.hpp"
#include "qcorr/xstate.hpp"

using namespace qcorr;

namespace {
const SystemParams kParams = SystemParams::from_ratio(3.0, 1.0 / std::sqrt(3.0));
const SystemParams kOverdamped = SystemParams::from_ratio(0.125, 1.0 / std::sqrt(3.0));
}  // namespace

TEST_CASE("flat continuum coupling from the decay rate") {
    CHECK(continuum_coupling(2.0 * std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(continuum_coupling(1.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
    for (double gamma : {0.3, 1.0, 7.5}) {
        const double kappa = continuum_coupling(gamma);
        CHECK(2.0 * std::numbers::pi * kappa * kappa == doctest::Approx(gamma).epsilon(1e-14));
    }
    CHECK_THROWS_AS(continuum_coupling(0.0), std::invalid_argument);
    CHECK_THROWS_AS(continuum_coupling(-1.0), std::invalid_argument);
}

TEST_CASE("flux starts at zero and vanishes exactly with the cavity amplitude") {
    CHECK(output_flux(kParams, 0.0) == 0.0);

    // zeros of the flux sit at multiples of pi/Omega where sin(Omega t) = 0
    const double omega = std::sqrt(kParams.g * kParams.g - 1.0 / 16.0);
    for (int k = 1; k <= 3; ++k) {
        const double t = k * std::numbers::pi / omega;
        CHECK(output_flux(kParams, t) < 1e-12);
        CHECK(output_flux(kParams, t + 0.2) > 1e-6);
    }
}

TEST_CASE("overdamped flux is single-humped and positive") {
    double prev = output_flux(kOverdamped, 0.05);
    bool decreasing = false;
    for (int i = 2; i <= 160; ++i) {
        const double t = 8.0 * i / 160.0;
        const double flux = output_flux(kOverdamped, t);
        CHECK(flux > 0.0);
        if (flux < prev)
            decreasing = true;
        else
            CHECK(!decreasing);  // once past the hump it never rises again
        prev = flux;
    }
}

TEST_CASE("cumulative emission equals the reservoir population") {
    CHECK(emitted_photons(kParams, 0.0) == 0.0);
    for (const auto& p : {kParams, kOverdamped}) {
        for (double t : {0.4, 1.0, 2.5, 6.0}) {
            const double chi_sq = std::norm(single_excitation_amplitudes(p, t).reservoir);
            CHECK(std::abs(emitted_photons(p, t) - chi_sq) < 1e-8);
        }
    }
}

TEST_CASE("the full excitation is eventually extracted") {
    CHECK(std::abs(emitted_photons(kParams, 50.0) - 1.0) < 1e-6);
}

TEST_CASE("photon conservation along the evolution") {
    for (double t : {0.3, 0.9, 1.8, 4.2}) {
        const AmplitudeTriple amp = single_excitation_amplitudes(kParams, t);
        const double total =
            std::norm(amp.qubit) + std::norm(amp.cavity) + emitted_photons(kParams, t);
        CHECK(std::abs(total - 1.0) < 1e-8);
    }
}

TEST_CASE("reservoir discord approaches the initial qubit discord") {
    const XState q0 = pair_state(Pair::Qubits, kParams, single_excitation_amplitudes(kParams, 0.0));
    const XState r_late =
        pair_state(Pair::Reservoirs, kParams, single_excitation_amplitudes(kParams, 50.0));
    CHECK(std::abs(discord(r_late) - discord(q0)) < 1e-4);
    CHECK(std::abs(concurrence(r_late) - concurrence(q0)) < 1e-4);
}

TEST_CASE("cavity entanglement dies on intervals while cavity discord zeros are isolated") {
    // concurrence between the cavities vanishes on an initial stretch
    int initial_dead = 0;
    const int n = 2000;
    for (int i = 1; i <= n; ++i) {
        const double t = 3.0 * i / n;
        const XState c = pair_state(Pair::Cavities, kParams, single_excitation_amplitudes(kParams, t));
        if (concurrence(c) == 0.0 && initial_dead == i - 1) initial_dead = i;
    }
    CHECK(initial_dead * 3.0 / n > 0.01);

    // discord between the cavities vanishes only where the cavity amplitude does
    const double omega = std::sqrt(kParams.g * kParams.g - 1.0 / 16.0);
    for (int k = 1; k <= 2; ++k) {
        const double t = k * std::numbers::pi / omega;
        const XState at = pair_state(Pair::Cavities, kParams, single_excitation_amplitudes(kParams, t));
        CHECK(discord(at) < 1e-9);
        for (double side : {t - 1e-2, t + 1e-2}) {
            const XState near =
                pair_state(Pair::Cavities, kParams, single_excitation_amplitudes(kParams, side));
            CHECK(discord(near) > 1e-9);
        }
    }
}
