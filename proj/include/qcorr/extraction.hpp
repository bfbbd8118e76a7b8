// Output-field observables of one leaky cavity under vacuum input: the
// boundary relation a_out + a_in = -i sqrt(2 pi) |kappa| a maps intracavity
// expectation values to the flux of traveling photons.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcorr/model.hpp"
#include "qcorr/quadrature.hpp"

namespace qcorr {

// Flat continuum coupling matching a cavity photon-loss rate gamma, i.e.
// gamma = 2 pi kappa^2, taken real positive.
inline double continuum_coupling(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    return std::sqrt(gamma / (2.0 * std::numbers::pi));
}

// Output photon flux 2 pi kappa^2 <a+a> = gamma |cavity amplitude|^2 for a
// subsystem carrying a single excitation.
inline double output_flux(const SystemParams& params, double t) {
    const AmplitudeTriple amp = single_excitation_amplitudes(params, t);
    return params.gamma * std::norm(amp.cavity);
}

// Photons emitted up to time t: the quadrature of the flux, which balances
// the population of the collective reservoir mode.
inline double emitted_photons(const SystemParams& params, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    if (t == 0.0) return 0.0;
    // resolve the carrier oscillation: ~1e3 nodes per unit of max(g,gamma)*t
    const double scale = std::max(params.g, params.gamma);
    auto n0 = static_cast<std::size_t>(std::min(1.0e6, 64.0 + 256.0 * scale * t));
    auto f = [&](double s) { return output_flux(params, s); };
    return simpson_refined(f, 0.0, t, 1e-10, n0, 6);
}

struct OutputRecord {
    double t = 0.0;          // dimensionless gamma*t
    double flux = 0.0;       // photons per unit time
    double cumulative = 0.0; // photons emitted so far
};

}  // namespace qcorr
