// Single-subsystem dynamics: one qubit in a leaky single-mode cavity whose
// photon escapes into a zero-temperature reservoir. With one excitation
// shared between qubit, cavity and reservoir, the state is fixed by three
// complex amplitudes whose closed form is implemented here together with an
// independent ODE integration of the same dynamics.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Physical configuration. gamma sets the time unit; alpha/beta are the
// ground/doubly-excited amplitudes of the initial two-qubit state
// alpha|00> + beta|11> (alpha real >= 0, beta complex).
struct SystemParams {
    double g = 0.0;
    double gamma = 1.0;
    double alpha = 0.0;
    cdouble beta{0.0, 0.0};

    SystemParams(double g_, double gamma_, double alpha_, cdouble beta_)
        : g(g_), gamma(gamma_), alpha(alpha_), beta(beta_) {
        if (!(g >= 0.0)) throw std::invalid_argument("coupling g must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("cavity loss gamma must be > 0");
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
        const double norm = alpha * alpha + std::norm(beta);
        if (std::abs(norm - 1.0) > 1e-12)
            throw std::invalid_argument("alpha^2 + |beta|^2 must equal 1");
    }

    // Convenience: dimensionless setup with gamma = 1, g = g/gamma and
    // beta = sqrt(1 - alpha^2) e^{i phase}.
    static SystemParams from_ratio(double g_over_gamma, double alpha, double beta_phase = 0.0) {
        const double beta_mag_sq = std::max(0.0, 1.0 - alpha * alpha);
        const cdouble beta = std::sqrt(beta_mag_sq) *
                             cdouble{std::cos(beta_phase), std::sin(beta_phase)};
        return SystemParams(g_over_gamma, 1.0, alpha, beta);
    }
};

// Amplitudes of the shared excitation sitting on the qubit, in the cavity,
// or in the collective reservoir mode. Normalized to 1; starts at (1, 0, 0).
struct AmplitudeTriple {
    cdouble qubit{1.0, 0.0};
    cdouble cavity{0.0, 0.0};
    cdouble reservoir{0.0, 0.0};

    double norm_sq() const {
        return std::norm(qubit) + std::norm(cavity) + std::norm(reservoir);
    }

    void require_normalized(double tol = 1e-9) const {
        if (std::abs(norm_sq() - 1.0) > tol)
            throw std::invalid_argument("amplitude triple is not normalized");
    }
};

namespace detail {

// cos(sqrt(disc) t) and sin(sqrt(disc) t)/sqrt(disc), both entire in disc,
// so one code path covers oscillatory (disc > 0), hyperbolic (disc < 0) and
// critical (disc = 0) damping without cancellation at the boundary.
inline double cos_like(double disc, double t) {
    const double x = disc * t * t;
    if (std::abs(x) < 1e-4) {
        // cos-type series in x = disc t^2
        double term = 1.0, sum = 1.0;
        for (int k = 1; k <= 8; ++k) {
            term *= -x / static_cast<double>((2 * k) * (2 * k - 1));
            sum += term;
        }
        return sum;
    }
    if (disc > 0.0) return std::cos(std::sqrt(disc) * t);
    return std::cosh(std::sqrt(-disc) * t);
}

inline double sinc_like(double disc, double t) {
    const double x = disc * t * t;
    if (std::abs(x) < 1e-4) {
        double term = t, sum = t;
        for (int k = 1; k <= 8; ++k) {
            term *= -x / static_cast<double>((2 * k) * (2 * k + 1));
            sum += term;
        }
        return sum;
    }
    if (disc > 0.0) {
        const double w = std::sqrt(disc);
        return std::sin(w * t) / w;
    }
    const double w = std::sqrt(-disc);
    return std::sinh(w * t) / w;
}

}  // namespace detail

// Closed-form amplitudes at time t. Phase convention: the qubit amplitude is
// real in the underdamped regime, the cavity amplitude carries the -i of the
// exchange coupling, and the reservoir amplitude is the real nonnegative
// root of the leaked population. Only moduli enter any reported measure.
inline AmplitudeTriple single_excitation_amplitudes(const SystemParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    const double disc = p.g * p.g - p.gamma * p.gamma / 16.0;
    const double envelope = std::exp(-p.gamma * t / 4.0);
    const double c = detail::cos_like(disc, t);
    const double s = detail::sinc_like(disc, t);

    AmplitudeTriple a;
    a.qubit = envelope * (c + 0.25 * p.gamma * s);
    a.cavity = cdouble{0.0, -1.0} * (p.g * envelope * s);
    const double leaked = 1.0 - std::norm(a.qubit) - std::norm(a.cavity);
    a.reservoir = std::sqrt(std::max(0.0, leaked));
    return a;
}

// Same dynamics by fixed-step RK4 on
//   d(qubit)/dt  = -i g cavity
//   d(cavity)/dt = -i g qubit - (gamma/2) cavity
//   d(leak)/dt   = gamma |cavity|^2
// from (1, 0, 0). Serves as the independent cross-check of the closed form.
inline AmplitudeTriple integrate_amplitudes(const SystemParams& p, double t, double dt) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    const double scale = std::max(p.g, p.gamma);
    if (!(dt > 0.0) || dt > 0.01 / scale + 1e-15)
        throw std::invalid_argument("step too large: require dt <= 0.01/max(g, gamma)");

    struct State {
        cdouble q, c;
        double leak;
    };
    auto rhs = [&p](const State& s) {
        return State{cdouble{0.0, -1.0} * p.g * s.c,
                     cdouble{0.0, -1.0} * p.g * s.q - 0.5 * p.gamma * s.c,
                     p.gamma * std::norm(s.c)};
    };
    auto axpy = [](const State& s, double h, const State& d) {
        return State{s.q + h * d.q, s.c + h * d.c, s.leak + h * d.leak};
    };

    State y{cdouble{1.0, 0.0}, cdouble{0.0, 0.0}, 0.0};
    if (t > 0.0) {
        const auto n = static_cast<std::size_t>(std::ceil(t / dt - 1e-12));
        const double h = t / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const State k1 = rhs(y);
            const State k2 = rhs(axpy(y, 0.5 * h, k1));
            const State k3 = rhs(axpy(y, 0.5 * h, k2));
            const State k4 = rhs(axpy(y, h, k3));
            y.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
            y.c += h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
            y.leak += h / 6.0 * (k1.leak + 2.0 * k2.leak + 2.0 * k3.leak + k4.leak);
        }
    }

    AmplitudeTriple a;
    a.qubit = y.q;
    a.cavity = y.c;
    a.reservoir = std::sqrt(std::max(0.0, y.leak));
    return a;
}

// Times where the qubit amplitude vanishes, i.e. the roots of
// tan(Omega t) = -4 Omega / gamma in the underdamped regime. Returns the
// first `count` roots with t > 0 by bisection on the closed form.
inline std::vector<double> qubit_amplitude_zeros(const SystemParams& p, std::size_t count) {
    const double disc = p.g * p.g - p.gamma * p.gamma / 16.0;
    if (disc <= 0.0) return {};  // no zero crossings outside the oscillatory regime
    const double omega = std::sqrt(disc);
    auto f = [&](double t) {
        return detail::cos_like(disc, t) + 0.25 * p.gamma * detail::sinc_like(disc, t);
    };
    std::vector<double> roots;
    const double period = std::numbers::pi / omega;
    double lo = 0.0;
    while (roots.size() < count) {
        double hi = lo + period;
        // f alternates sign between consecutive half-periods of the carrier
        while (f(lo) * f(hi) > 0.0) {
            lo = hi;
            hi += period;
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(lo) * f(mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        roots.push_back(0.5 * (lo + hi));
        lo = roots.back() + 0.25 * period;
    }
    return roots;
}

}  // namespace qcorr
