// Fano diagonalization of a discrete cavity mode coupled to a bosonic
// continuum: the principal-value level shift F(w), the normalized detuning
// z(w), the dressed-mode weight |alpha(w)|^2 and the equivalent Lorentzian
// spectral density seen by the qubit.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/model.hpp"
#include "qcorr/quadrature.hpp"

namespace qcorr {

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

namespace detail {

// Integral of f over [a, b] where f varies on the scale of its distance to a
// pole just outside the interval at `edge` side: doubling segments away from
// it keep the sampling proportional to that distance.
template <typename F>
double graded_integral(F&& f, double a, double b, bool pole_at_a, double w0) {
    if (b <= a) return 0.0;
    double total = 0.0;
    if (pole_at_a) {
        double left = a;
        double width = w0;
        while (left < b) {
            const double right = std::min(b, left + width);
            total += simpson(f, left, right, 64);
            left = right;
            width *= 2.0;
        }
    } else {
        double right = b;
        double width = w0;
        while (right > a) {
            const double left = std::max(a, right - width);
            total += simpson(f, left, right, 64);
            right = left;
            width *= 2.0;
        }
    }
    return total;
}

}  // namespace detail

// Principal-value integral  F(w) = P int_band |kappa(w')|^2 / (w - w') dw'.
// Inside the band the pole is excised symmetrically: paired nodes at w +- u
// cancel the 1/(w - w') singularity exactly, leaving the smooth difference
// quotient (f(w-u) - f(w+u))/u. The asymmetric remainder and the
// outside-band case are regular integrals graded away from the pole.
template <typename Profile>
double level_shift(Profile&& kappa, double omega, Band band, double tol = 1e-9) {
    if (!(band.hi > band.lo)) throw std::invalid_argument("empty band");
    auto f = [&](double x) {
        const double k = kappa(x);
        if (!std::isfinite(k)) throw std::invalid_argument("coupling profile is not finite");
        return k * k;
    };

    if (omega <= band.lo || omega >= band.hi) {
        auto integrand = [&](double x) { return f(x) / (omega - x); };
        const double dist = omega <= band.lo ? band.lo - omega : omega - band.hi;
        const double w0 = std::max(dist, (band.hi - band.lo) * 1e-12);
        return detail::graded_integral(integrand, band.lo, band.hi, omega <= band.lo, w0);
    }

    const double r = std::min(omega - band.lo, band.hi - omega);
    const double u_min = r * 1e-9;
    auto symmetric_part = [&](double u) {
        if (u < u_min) u = u_min;
        return (f(omega - u) - f(omega + u)) / u;
    };
    double result = simpson_refined(symmetric_part, 0.0, r, tol, 64, 10);

    auto integrand = [&](double x) { return f(x) / (omega - x); };
    if (omega - band.lo < band.hi - omega) {
        result += detail::graded_integral(integrand, omega + r, band.hi, true, r);
    } else if (band.hi - omega < omega - band.lo) {
        result += detail::graded_integral(integrand, band.lo, omega - r, false, r);
    }
    return result;
}

// z(w) = (w - w_a - F(w)) / |kappa(w)|^2.
inline double normalized_detuning(double omega, double omega_a, double kappa_at_omega,
                                  double shift_at_omega) {
    const double k2 = kappa_at_omega * kappa_at_omega;
    if (!(k2 > 0.0)) throw std::invalid_argument("zero coupling: detuning diverges");
    return (omega - omega_a - shift_at_omega) / k2;
}

// Dressed-mode weight |alpha(w)|^2 = 1 / (|kappa|^2 (z^2 + pi^2)), the share
// of the bare cavity mode in the continuum eigenmode at w. Integrates to 1
// over the band.
inline double dressed_mode_weight(double omega, double omega_a, double kappa_at_omega,
                                  double shift_at_omega) {
    const double z = normalized_detuning(omega, omega_a, kappa_at_omega, shift_at_omega);
    const double k2 = kappa_at_omega * kappa_at_omega;
    const double pi = std::numbers::pi;
    return 1.0 / (k2 * (z * z + pi * pi));
}

// Smooth off-diagonal part of the bath mixing coefficient,
// B(w, w') = i alpha(w) kappa(w') / (w - w') away from the diagonal; the
// delta and principal-value pieces live in (alpha, z), never on a grid.
inline cdouble continuum_mixing_smooth(double omega, double omega_prime, cdouble alpha_at_omega,
                                       double kappa_at_omega_prime) {
    if (omega == omega_prime)
        throw std::invalid_argument("diagonal point: distributional part is not sampled");
    return cdouble{0.0, 1.0} * alpha_at_omega * kappa_at_omega_prime / (omega - omega_prime);
}

// Spectral density seen by the qubit once the cavity-continuum block is
// diagonalized, J(w) = g^2 |alpha(w)|^2. For the flat coupling fixed by
// gamma = 2 pi kappa^2 this is the Lorentzian
//   J(w) = (g^2 / pi) (gamma/2) / ((w - w_a)^2 + gamma^2/4).
inline double effective_spectral_density(double omega, const SystemParams& params,
                                         double omega_a = 0.0) {
    const double kappa = std::sqrt(params.gamma / (2.0 * std::numbers::pi));
    return params.g * params.g * dressed_mode_weight(omega, omega_a, kappa, 0.0);
}

// Sampled spectral functions over a frequency grid.
struct SpectralGrid {
    double omega_a = 0.0;
    std::vector<double> omega;
    std::vector<double> kappa;
    std::vector<double> shift;   // F(w)
    std::vector<double> z;
    std::vector<double> weight;  // |alpha(w)|^2
};

template <typename Profile>
SpectralGrid sample_spectrum(Profile&& kappa, double omega_a, Band band,
                             const std::vector<double>& omegas, double tol = 1e-9) {
    SpectralGrid grid;
    grid.omega_a = omega_a;
    grid.omega = omegas;
    grid.kappa.reserve(omegas.size());
    grid.shift.reserve(omegas.size());
    grid.z.reserve(omegas.size());
    grid.weight.reserve(omegas.size());
    for (double w : omegas) {
        const double k = kappa(w);
        const double f = level_shift(kappa, w, band, tol);
        grid.kappa.push_back(k);
        grid.shift.push_back(f);
        grid.z.push_back(normalized_detuning(w, omega_a, k, f));
        grid.weight.push_back(dressed_mode_weight(w, omega_a, k, f));
    }
    return grid;
}

}  // namespace qcorr
