#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qcorr/model.hpp"
#include "qcorr/quadrature.hpp"

using namespace qcorr;

namespace {
const SystemParams kUnderdamped = SystemParams::from_ratio(3.0, 1.0 / std::sqrt(3.0));
const SystemParams kOverdamped = SystemParams::from_ratio(0.125, 1.0 / std::sqrt(3.0));
constexpr double kOracleStep = 1e-3;
}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams(-1.0, 1.0, 1.0, cdouble{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 0.0, 1.0, cdouble{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, -0.5, cdouble{0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, 0.9, cdouble{0.9, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(SystemParams(1.0, 1.0, 0.6, cdouble{0.0, 0.8}));
}

TEST_CASE("initial condition is (1, 0, 0) for any parameters") {
    for (const auto& p : {kUnderdamped, kOverdamped}) {
        const AmplitudeTriple a = single_excitation_amplitudes(p, 0.0);
        CHECK(a.qubit == cdouble{1.0, 0.0});
        CHECK(std::abs(a.cavity) == 0.0);
        CHECK(std::abs(a.reservoir) == 0.0);
    }
    CHECK_THROWS_AS(single_excitation_amplitudes(kUnderdamped, -1e-9), std::invalid_argument);
}

TEST_CASE("underdamped closed form matches its textbook expression") {
    // g = 3 gamma: Omega = gamma sqrt(143)/4, modulus squared written out
    const double gamma = kUnderdamped.gamma;
    const double omega = gamma * std::sqrt(143.0) / 4.0;
    for (double t : {0.1, 0.3, 0.6, 1.0, 2.2, 3.7}) {
        const AmplitudeTriple a = single_excitation_amplitudes(kUnderdamped, t);
        const double xi2_expected =
            std::exp(-gamma * t / 2.0) *
            std::pow(std::cos(omega * t) + gamma / (4.0 * omega) * std::sin(omega * t), 2);
        const double eta2_expected = std::pow(kUnderdamped.g / omega, 2) *
                                     std::exp(-gamma * t / 2.0) * std::pow(std::sin(omega * t), 2);
        CHECK(std::norm(a.qubit) == doctest::Approx(xi2_expected).epsilon(1e-12));
        CHECK(std::norm(a.cavity) == doctest::Approx(eta2_expected).epsilon(1e-12));
    }
}

TEST_CASE("closed form agrees with the ODE integration in both regimes") {
    for (const auto& p : {kUnderdamped, kOverdamped}) {
        for (double t : {0.05, 0.3, 0.6, 1.7, 4.0}) {
            const AmplitudeTriple closed = single_excitation_amplitudes(p, t);
            const AmplitudeTriple ode = integrate_amplitudes(p, t, kOracleStep);
            CHECK(std::abs(closed.qubit - ode.qubit) < 1e-8);
            CHECK(std::abs(closed.cavity - ode.cavity) < 1e-8);
            CHECK(std::abs(std::abs(closed.reservoir) - std::abs(ode.reservoir)) < 1e-8);
        }
    }
}

TEST_CASE("overdamped amplitudes decay monotonically with no zero crossings") {
    double prev_xi = 1.0;
    double max_eta = 0.0;
    bool eta_rising_phase_done = false;
    for (int i = 1; i <= 400; ++i) {
        const double t = 4.0 * i / 100.0;  // out to gamma t = 16
        const AmplitudeTriple a = single_excitation_amplitudes(kOverdamped, t);
        const double xi = std::abs(a.qubit);
        CHECK(xi > 0.0);
        CHECK(xi < prev_xi);
        prev_xi = xi;

        // |eta| has a single hump: once it starts decreasing it never rises
        const double eta = std::abs(a.cavity);
        if (eta < max_eta)
            eta_rising_phase_done = true;
        else
            CHECK(!eta_rising_phase_done);
        max_eta = std::max(max_eta, eta);
        CHECK(eta > 0.0);
    }
}

TEST_CASE("ODE oracle rejects too-large steps and trivial limits hold") {
    CHECK_THROWS_AS(integrate_amplitudes(kUnderdamped, 1.0, 0.02), std::invalid_argument);

    // decoupled qubit never decays
    const SystemParams frozen(0.0, 1.0, 1.0, cdouble{0.0, 0.0});
    const AmplitudeTriple a = integrate_amplitudes(frozen, 2.5, 1e-3);
    CHECK(std::abs(a.qubit - cdouble{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(a.cavity) < 1e-12);
    CHECK(std::abs(a.reservoir) < 1e-12);

    // vanishing loss: closed Jaynes-Cummings Rabi oscillation
    const SystemParams lossless(1.0, 1e-9, 1.0, cdouble{0.0, 0.0});
    for (double t : {0.4, 1.1, 2.0}) {
        const AmplitudeTriple r = integrate_amplitudes(lossless, t, 1e-3);
        CHECK(std::norm(r.qubit) == doctest::Approx(std::pow(std::cos(t), 2)).epsilon(1e-6));
        CHECK(std::norm(r.cavity) == doctest::Approx(std::pow(std::sin(t), 2)).epsilon(1e-6));
    }
}

TEST_CASE("normalization holds on a dense grid") {
    for (const auto& p : {kUnderdamped, kOverdamped}) {
        for (int i = 0; i <= 200; ++i) {
            const double t = 10.0 * i / 200.0;
            CHECK(std::abs(single_excitation_amplitudes(p, t).norm_sq() - 1.0) < 1e-12);
        }
        CHECK(std::abs(integrate_amplitudes(p, 1.3, kOracleStep).norm_sq() - 1.0) < 1e-8);
    }
}

TEST_CASE("reservoir population balances the integrated cavity leak") {
    for (const auto& p : {kUnderdamped, kOverdamped}) {
        for (double t : {0.5, 1.5, 3.0, 6.0}) {
            const double chi_sq = std::norm(single_excitation_amplitudes(p, t).reservoir);
            const double leak = simpson_refined(
                [&](double s) {
                    return p.gamma * std::norm(single_excitation_amplitudes(p, s).cavity);
                },
                0.0, t, 1e-12, 512, 8);
            CHECK(std::abs(chi_sq - leak) < 1e-8);
        }
    }
}

TEST_CASE("amplitudes are continuous across the critical-damping boundary") {
    const double alpha = 1.0 / std::sqrt(3.0);
    const SystemParams below = SystemParams::from_ratio(0.25 * (1.0 - 1e-6), alpha);
    const SystemParams above = SystemParams::from_ratio(0.25 * (1.0 + 1e-6), alpha);
    const SystemParams critical = SystemParams::from_ratio(0.25, alpha);
    for (double t : {0.3, 1.0, 2.5, 8.0}) {
        const auto lo = single_excitation_amplitudes(below, t);
        const auto mid = single_excitation_amplitudes(critical, t);
        const auto hi = single_excitation_amplitudes(above, t);
        CHECK(std::abs(lo.qubit - hi.qubit) < 1e-4);
        CHECK(std::abs(lo.cavity - hi.cavity) < 1e-4);
        CHECK(std::abs(lo.qubit - mid.qubit) < 1e-4);
        CHECK(std::abs(std::abs(lo.reservoir) - std::abs(hi.reservoir)) < 1e-4);
    }
}

TEST_CASE("critical damping matches the analytic limit") {
    const SystemParams critical = SystemParams::from_ratio(0.25, 0.6);
    for (double t : {0.2, 1.0, 3.3}) {
        const AmplitudeTriple a = single_excitation_amplitudes(critical, t);
        const double envelope = std::exp(-t / 4.0);
        CHECK(a.qubit.real() == doctest::Approx(envelope * (1.0 + t / 4.0)).epsilon(1e-12));
        CHECK(a.cavity.imag() == doctest::Approx(-0.25 * t * envelope).epsilon(1e-12));
    }
}

TEST_CASE("qubit amplitude zeros solve tan(Omega t) = -4 Omega / gamma") {
    const auto zeros = qubit_amplitude_zeros(kUnderdamped, 4);
    REQUIRE(zeros.size() == 4);
    const double omega = std::sqrt(9.0 - 1.0 / 16.0);
    const double first = (std::numbers::pi + std::atan(-4.0 * omega / kUnderdamped.gamma)) / omega;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        // explicit branch solution of the transcendental equation
        const double expected = first + static_cast<double>(k) * std::numbers::pi / omega;
        CHECK(std::abs(zeros[k] - expected) < 1e-10);
        const AmplitudeTriple a = single_excitation_amplitudes(kUnderdamped, zeros[k]);
        CHECK(std::abs(a.qubit) < 1e-10);
    }
    // roots are simple: the amplitude flips sign across each
    for (double t : zeros) {
        const double before = single_excitation_amplitudes(kUnderdamped, t - 1e-4).qubit.real();
        const double after = single_excitation_amplitudes(kUnderdamped, t + 1e-4).qubit.real();
        CHECK(before * after < 0.0);
    }
}
