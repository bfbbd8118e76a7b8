// Quantum discord from its definition: numerically maximize the information
// gained about party A over every rank-1 projective measurement on party B.
// This is the ground truth against which the closed-form discord is checked.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "qcorr/linalg.hpp"
#include "qcorr/xstate.hpp"

namespace qcorr {

// Bloch parameterization of the projector pair (I +- n.sigma)/2 on party B.
struct MeasurementBasis {
    double theta = 0.0;  // polar angle in [0, pi]
    double phi = 0.0;    // azimuth in [0, 2 pi)
};

namespace detail {

// Bloch decomposition of a two-qubit state: local vectors and the 3x3
// correlation tensor. Row index convention 2*i_A + i_B, excited level = 1.
struct BlochForm {
    std::array<double, 3> r{};     // party A
    std::array<double, 3> s{};     // party B
    double t[3][3] = {};           // correlation tensor
    double entropy_a = 0.0;        // S(rho_A) in bits
};

inline BlochForm bloch_decompose(const CMat& rho) {
    std::array<CMat, 3> sigma{CMat(2), CMat(2), CMat(2)};
    sigma[0](0, 1) = 1.0;
    sigma[0](1, 0) = 1.0;
    sigma[1](0, 1) = cdouble{0.0, -1.0};
    sigma[1](1, 0) = cdouble{0.0, 1.0};
    sigma[2](0, 0) = 1.0;
    sigma[2](1, 1) = -1.0;

    BlochForm f;
    const CMat eye = CMat::identity(2);
    for (int i = 0; i < 3; ++i) {
        f.r[i] = (kron(sigma[i], eye) * rho).trace().real();
        f.s[i] = (kron(eye, sigma[i]) * rho).trace().real();
        for (int j = 0; j < 3; ++j) f.t[i][j] = (kron(sigma[i], sigma[j]) * rho).trace().real();
    }
    const double r_len = std::min(1.0, std::sqrt(f.r[0] * f.r[0] + f.r[1] * f.r[1] + f.r[2] * f.r[2]));
    f.entropy_a = binary_entropy(0.5 * (1.0 + r_len));
    return f;
}

// Information about A from measuring B along direction n, evaluated from the
// precomputed Bloch form. Outcomes with probability below 1e-14 contribute 0.
inline double measured_information_bloch(const BlochForm& f, const std::array<double, 3>& n) {
    double conditional = 0.0;
    for (int sign = +1; sign >= -1; sign -= 2) {
        const double sn = f.s[0] * n[0] + f.s[1] * n[1] + f.s[2] * n[2];
        const double p = 0.5 * (1.0 + sign * sn);
        if (p < 1e-14) continue;
        double v_sq = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double vi =
                (f.r[i] + sign * (f.t[i][0] * n[0] + f.t[i][1] * n[1] + f.t[i][2] * n[2])) /
                (2.0 * p);
            v_sq += vi * vi;
        }
        const double v = std::min(1.0, std::sqrt(v_sq));
        conditional += p * binary_entropy(0.5 * (1.0 + v));
    }
    return f.entropy_a - conditional;
}

inline std::array<double, 3> direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace detail

// S(rho_A) - sum_k p_k S(rho_k) for the projective measurement on B fixed by
// the basis angles. Throws on invalid density matrices.
inline double measured_information(const CMat& rho, const MeasurementBasis& basis) {
    if (rho.dim() != 4) throw std::invalid_argument("expected a two-qubit matrix");
    require_density_matrix(rho, 1e-10);
    return detail::measured_information_bloch(detail::bloch_decompose(rho),
                                              detail::direction(basis.theta, basis.phi));
}

// Total correlations of an arbitrary two-qubit state.
inline double mutual_information(const CMat& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("expected a two-qubit matrix");
    require_density_matrix(rho, 1e-10);
    const double s_a = entropy_from_eigenvalues(hermitian_eigenvalues(partial_trace_second(rho, 2, 2)));
    const double s_b = entropy_from_eigenvalues(hermitian_eigenvalues(partial_trace_first(rho, 2, 2)));
    const double s_ab = entropy_from_eigenvalues(hermitian_eigenvalues(rho));
    return s_a + s_b - s_ab;
}

struct MeasurementSearchResult {
    double mutual = 0.0;     // I(rho)
    double classical = 0.0;  // sup over bases of the measured information
    double discord = 0.0;    // mutual - classical, clamped at 0
    MeasurementBasis best{};
};

// Exhaustive search over the measurement sphere: a coarse grid (the pair
// {+n, -n} is one measurement, so theta only runs to pi/2) followed by
// alternating golden-section refinement on each angle. Deterministic.
inline MeasurementSearchResult measurement_search(const CMat& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("expected a two-qubit matrix");
    require_density_matrix(rho, 1e-10);
    const auto f = detail::bloch_decompose(rho);

    constexpr int n_theta = 181;
    constexpr int n_phi = 181;
    const double pi = std::numbers::pi;

    auto objective = [&](double theta, double phi) {
        return detail::measured_information_bloch(f, detail::direction(theta, phi));
    };

    double best = -1.0, best_theta = 0.0, best_phi = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = 0.5 * pi * static_cast<double>(i) / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * pi * static_cast<double>(j) / n_phi;
            const double val = objective(theta, phi);
            if (val > best) {
                best = val;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    // Golden-section maximization along one coordinate.
    auto golden = [](auto&& g, double lo, double hi) {
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double g1 = g(x1), g2 = g(x2);
        for (int it = 0; it < 40; ++it) {
            if (g1 < g2) {
                lo = x1;
                x1 = x2;
                g1 = g2;
                x2 = lo + inv_phi * (hi - lo);
                g2 = g(x2);
            } else {
                hi = x2;
                x2 = x1;
                g2 = g1;
                x1 = hi - inv_phi * (hi - lo);
                g1 = g(x1);
            }
        }
        return 0.5 * (lo + hi);
    };

    const double dtheta = 0.5 * pi / (n_theta - 1);
    const double dphi = 2.0 * pi / n_phi;
    for (int pass = 0; pass < 2; ++pass) {
        best_theta = golden([&](double th) { return objective(th, best_phi); },
                            best_theta - dtheta, best_theta + dtheta);
        best_phi = golden([&](double ph) { return objective(best_theta, ph); },
                          best_phi - dphi, best_phi + dphi);
    }

    MeasurementSearchResult out;
    out.best = MeasurementBasis{best_theta, best_phi};
    out.classical = objective(best_theta, best_phi);
    // the refined point can only improve on the grid
    out.classical = std::max(out.classical, best);
    out.mutual = mutual_information(rho);
    const double d = out.mutual - out.classical;
    if (d < -1e-9) throw std::logic_error("measured information exceeded total correlations");
    out.discord = std::max(0.0, d);
    return out;
}

inline double discord_brute_force(const CMat& rho) { return measurement_search(rho).discord; }

// Deterministic 64-bit generator (splitmix64) so validation suites freeze
// their random states independently of the standard library.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

// Random state of the symmetric X family: populations from a flat simplex
// sample, coherences uniform within their positivity caps, phases free.
inline XState random_symmetric_xstate(DetRng& rng) {
    const double e1 = -std::log(1.0 - rng.uniform());
    const double e2 = -std::log(1.0 - rng.uniform());
    const double e3 = -std::log(1.0 - rng.uniform());
    const double total = e1 + e2 + e3;
    const double a = e1 / total;
    const double b = 0.5 * (e2 / total);
    const double d = e3 / total;

    const double w_mag = rng.uniform() * std::sqrt(a * d);
    const double z_mag = rng.uniform() * b;
    const double w_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double z_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return XState(a, b, d, w_mag * cdouble{std::cos(w_phase), std::sin(w_phase)},
                  z_mag * cdouble{std::cos(z_phase), std::sin(z_phase)});
}

}  // namespace qcorr
