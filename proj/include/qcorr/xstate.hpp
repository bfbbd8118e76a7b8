// Pairwise correlation measures for the X-structured two-party states that
// arise when both subsystems start from a Bell-like two-excitation state.
// Implements entropy, mutual information, concurrence and the closed-form
// quantum discord for the symmetric X-state family.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

// p log2(p) with the 0 log 0 := 0 convention.
inline double plog2p(double p) {
    if (p <= 0.0) return 0.0;
    return p * std::log2(p);
}

// p log2(p/q), zero when p vanishes.
inline double plog2_ratio(double p, double q) {
    if (p <= 0.0) return 0.0;
    return p * std::log2(p / q);
}

// Binary entropy in bits.
inline double binary_entropy(double p) { return -plog2p(p) - plog2p(1.0 - p); }

inline double entropy_from_eigenvalues(const std::vector<double>& eig, double tol = 1e-10) {
    double s = 0.0;
    for (double v : eig) {
        if (v < -tol) throw std::invalid_argument("entropy of a non-positive matrix");
        s -= plog2p(v);
    }
    return s;
}

// Von Neumann entropy in bits of a general density matrix.
inline double von_neumann_entropy(const CMat& rho, double tol = 1e-10) {
    require_density_matrix(rho, tol);
    return entropy_from_eigenvalues(hermitian_eigenvalues(rho), tol);
}

// Two-party X-structured state in the basis {|11>, |10>, |01>, |00>} with
// equal single-excitation populations, so both reduced states coincide.
//   p_both  = <11|rho|11>        coh_outer = <11|rho|00>
//   p_one   = <10|rho|10> = <01|rho|01>
//   p_none  = <00|rho|00>        coh_inner = <10|rho|01>
struct XState {
    double p_both = 0.0;
    double p_one = 0.0;
    double p_none = 1.0;
    cdouble coh_outer{0.0, 0.0};
    cdouble coh_inner{0.0, 0.0};

    XState() = default;
    XState(double both, double one, double none, cdouble outer, cdouble inner)
        : p_both(both), p_one(one), p_none(none), coh_outer(outer), coh_inner(inner) {
        if (p_both < -1e-12 || p_one < -1e-12 || p_none < -1e-12)
            throw std::invalid_argument("negative population");
        if (std::abs(p_both + 2.0 * p_one + p_none - 1.0) > 1e-12)
            throw std::invalid_argument("populations do not sum to 1");
        if (std::abs(coh_outer) > std::sqrt(std::max(0.0, p_both * p_none)) + 1e-12)
            throw std::invalid_argument("outer coherence violates positivity");
        if (std::abs(coh_inner) > p_one + 1e-12)
            throw std::invalid_argument("inner coherence violates positivity");
    }

    // Spectrum in closed form: the outer 2x2 block {p_both, p_none, coh_outer}
    // and the inner block {p_one, p_one, coh_inner}.
    std::vector<double> eigenvalues() const {
        const double half_sum = 0.5 * (p_both + p_none);
        const double half_diff = 0.5 * (p_both - p_none);
        const double r = std::sqrt(half_diff * half_diff + std::norm(coh_outer));
        return {half_sum + r, half_sum - r, p_one + std::abs(coh_inner),
                p_one - std::abs(coh_inner)};
    }

    // Population of the excited level in either reduced single-party state.
    double reduced_excited_population() const { return p_both + p_one; }
};

enum class Pair { Qubits, Cavities, Reservoirs };

inline const char* pair_name(Pair p) {
    switch (p) {
        case Pair::Qubits: return "qubits";
        case Pair::Cavities: return "cavities";
        case Pair::Reservoirs: return "reservoirs";
    }
    return "?";
}

// Reduced state of the chosen pair of parties at the instant described by
// the amplitude triple. With u the amplitude on that party,
//   p_both = |beta|^2 |u|^4, p_one = |beta|^2 |u|^2 (1-|u|^2),
//   p_none = alpha^2 + |beta|^2 (1-|u|^2)^2, coh_outer = alpha beta u^2.
inline XState pair_state(Pair pair, const SystemParams& params, const AmplitudeTriple& amp) {
    amp.require_normalized();
    cdouble u{0.0, 0.0};
    switch (pair) {
        case Pair::Qubits: u = amp.qubit; break;
        case Pair::Cavities: u = amp.cavity; break;
        case Pair::Reservoirs: u = amp.reservoir; break;
    }
    const double u2 = std::norm(u);
    const double b2 = std::norm(params.beta);
    const double both = b2 * u2 * u2;
    const double one = b2 * u2 * (1.0 - u2);
    const double none = params.alpha * params.alpha + b2 * (1.0 - u2) * (1.0 - u2);
    const cdouble outer = params.alpha * params.beta * u * u;

    // Guard against |coh_outer| creeping past sqrt(p_both p_none) by a few ulp.
    const double cap = std::sqrt(std::max(0.0, both * none));
    cdouble outer_clipped = outer;
    if (std::abs(outer) > cap && std::abs(outer) > 0.0)
        outer_clipped = outer * (cap / std::abs(outer));
    return XState(both, one, none, outer_clipped, cdouble{0.0, 0.0});
}

inline double von_neumann_entropy(const XState& x) {
    double s = 0.0;
    for (double v : x.eigenvalues()) {
        // closed-form eigenvalues can undershoot zero by rounding only
        s -= plog2p(std::max(0.0, v));
    }
    return s;
}

// Total correlations S(A) + S(B) - S(AB); the two marginals coincide for
// this family, each with excited population p_both + p_one.
inline double mutual_information(const XState& x) {
    return 2.0 * binary_entropy(x.reduced_excited_population()) - von_neumann_entropy(x);
}

// Wootters concurrence specialized to the X structure, with moduli so that
// states with complex coherences are handled by their local-phase-invariant
// representatives.
inline double concurrence(const XState& x) {
    const double inner = std::abs(x.coh_inner) - std::sqrt(std::max(0.0, x.p_both * x.p_none));
    const double outer = std::abs(x.coh_outer) - x.p_one;
    return 2.0 * std::max({0.0, inner, outer});
}

// Quantum discord of the symmetric X-state family: the smaller of the two
// candidate measurements on one party, the populations basis and the
// balanced superposition basis.
inline double discord(const XState& x) {
    const double s_reduced = binary_entropy(x.reduced_excited_population());
    const double s_joint = von_neumann_entropy(x);

    const double a = x.p_both, b = x.p_one, d = x.p_none;

    // measurement along the populations axis
    const double d1 = s_reduced - s_joint - plog2_ratio(a, a + b) - plog2_ratio(b, a + b) -
                      plog2_ratio(d, b + d) - plog2_ratio(b, b + d);

    // measurement in the balanced basis
    const double coh = std::abs(x.coh_inner) + std::abs(x.coh_outer);
    const double gamma_sq = (a - d) * (a - d) + 4.0 * coh * coh;
    const double gamma = std::sqrt(std::min(1.0, gamma_sq));
    const double d2 = s_reduced - s_joint + binary_entropy(0.5 * (1.0 - gamma));

    const double result = std::min(d1, d2);
    if (result < -1e-10) throw std::logic_error("discord evaluated significantly below zero");
    return std::max(0.0, result);
}

// Classical correlations as total minus quantum.
inline double classical_correlations(const XState& x) {
    const double q = mutual_information(x) - discord(x);
    if (q < -1e-10) throw std::logic_error("classical correlations significantly below zero");
    return std::max(0.0, q);
}

// Full 4x4 matrix in the computational product basis, row index 2*i_A + i_B
// with |1> the excited level, so |11> is row 3 and |00> is row 0.
inline CMat to_matrix(const XState& x) {
    CMat m(4);
    m(3, 3) = x.p_both;
    m(2, 2) = x.p_one;
    m(1, 1) = x.p_one;
    m(0, 0) = x.p_none;
    m(3, 0) = x.coh_outer;
    m(0, 3) = std::conj(x.coh_outer);
    m(2, 1) = x.coh_inner;
    m(1, 2) = std::conj(x.coh_inner);
    return m;
}

// Inverse of to_matrix; rejects matrices without the symmetric X structure.
inline XState xstate_from_matrix(const CMat& m, double tol = 1e-10) {
    if (m.dim() != 4) throw std::invalid_argument("expected a two-qubit matrix");
    double off = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool x_slot = (i == j) || (i + j == 3);
            if (!x_slot) off = std::max(off, std::abs(m(i, j)));
        }
    if (off > tol) throw std::invalid_argument("matrix is not X-structured");
    if (std::abs(m(1, 1) - m(2, 2)) > tol)
        throw std::invalid_argument("unequal single-excitation populations");
    return XState(m(3, 3).real(), 0.5 * (m(1, 1).real() + m(2, 2).real()), m(0, 0).real(),
                  m(3, 0), m(2, 1));
}

// One exported row of the correlation time series.
struct CorrelationRecord {
    double t = 0.0;
    Pair pair = Pair::Qubits;
    double concurrence = 0.0;
    double discord = 0.0;
    double classical = 0.0;
    double mutual = 0.0;
};

inline CorrelationRecord correlation_record(double t, Pair pair, const SystemParams& params) {
    const AmplitudeTriple amp = single_excitation_amplitudes(params, t);
    const XState x = pair_state(pair, params, amp);
    CorrelationRecord r;
    r.t = t;
    r.pair = pair;
    r.concurrence = concurrence(x);
    r.discord = discord(x);
    r.mutual = mutual_information(x);
    r.classical = classical_correlations(x);
    return r;
}

}  // namespace qcorr
