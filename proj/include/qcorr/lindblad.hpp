// Master-equation integrator for one qubit coupled to its leaky cavity mode,
//   d rho / dt = i [rho, H] + (gamma/2) (2 a rho a+ - a+a rho - rho a+a),
// on a truncated Fock space. Cross-validates the closed-form amplitudes.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qcorr/linalg.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

// Density matrix of qubit (x) cavity with Fock truncation n_max.
// Row index convention: q * (n_max + 1) + n, qubit level q in {0, 1}.
struct QubitCavityState {
    CMat matrix;
    std::size_t n_max = 1;

    QubitCavityState(CMat m, std::size_t nmax) : matrix(std::move(m)), n_max(nmax) {
        if (matrix.dim() != 2 * (n_max + 1))
            throw std::invalid_argument("state dimension does not match truncation");
        validate();
    }

    static QubitCavityState excited_qubit_vacuum(std::size_t n_max) {
        CMat m(2 * (n_max + 1));
        m(n_max + 1, n_max + 1) = 1.0;  // |1>_q |0>_c
        return QubitCavityState(std::move(m), n_max);
    }

    static QubitCavityState ground(std::size_t n_max) {
        CMat m(2 * (n_max + 1));
        m(0, 0) = 1.0;
        return QubitCavityState(std::move(m), n_max);
    }

    std::size_t index(std::size_t q, std::size_t n) const { return q * (n_max + 1) + n; }

    void validate() const {
        if (std::abs(matrix.trace() - cdouble{1.0, 0.0}) > 1e-10)
            throw std::runtime_error("state trace drifted from 1");
        if (matrix.hermiticity_defect() > 1e-12)
            throw std::runtime_error("state lost Hermiticity");
        const auto eig = hermitian_eigenvalues(matrix);
        if (eig.front() < -1e-10)
            throw std::runtime_error("state developed a negative eigenvalue");
    }
};

namespace detail {

inline CMat cavity_annihilation(std::size_t n_max) {
    const std::size_t dim = 2 * (n_max + 1);
    CMat a(dim);
    for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t n = 1; n <= n_max; ++n)
            a(q * (n_max + 1) + n - 1, q * (n_max + 1) + n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline CMat qubit_lowering(std::size_t n_max) {
    const std::size_t dim = 2 * (n_max + 1);
    CMat s(dim);
    for (std::size_t n = 0; n <= n_max; ++n) s(n, n_max + 1 + n) = 1.0;
    return s;
}

}  // namespace detail

struct EvolveOptions {
    // Retains the degenerate bare term omega (n_q + n_c) when nonzero; all
    // populations and the exchange coherence are unchanged by it, which the
    // tests use to confirm the resonant-frame reduction.
    double bare_frequency = 0.0;
};

// Generator pieces shared by lindblad_rhs and evolve.
class LindbladGenerator {
public:
    LindbladGenerator(const SystemParams& params, std::size_t n_max,
                      const EvolveOptions& opts = {})
        : gamma_(params.gamma), a_(detail::cavity_annihilation(n_max)) {
        const CMat sm = detail::qubit_lowering(n_max);
        const CMat ad = a_.adjoint();
        hamiltonian_ = params.g * (sm * ad + sm.adjoint() * a_);
        if (opts.bare_frequency != 0.0) {
            const std::size_t dim = 2 * (n_max + 1);
            CMat number(dim);
            for (std::size_t q = 0; q < 2; ++q)
                for (std::size_t n = 0; n <= n_max; ++n)
                    number(q * (n_max + 1) + n, q * (n_max + 1) + n) =
                        static_cast<double>(q + n);
            hamiltonian_ += opts.bare_frequency * number;
        }
        a_dag_a_ = ad * a_;
    }

    CMat apply(const CMat& rho) const {
        const cdouble i_unit{0.0, 1.0};
        CMat out = i_unit * (rho * hamiltonian_ - hamiltonian_ * rho);
        out += gamma_ * (a_ * rho * a_.adjoint());
        out -= (0.5 * gamma_) * (a_dag_a_ * rho + rho * a_dag_a_);
        return out;
    }

private:
    double gamma_;
    CMat a_;
    CMat hamiltonian_;
    CMat a_dag_a_;
};

// One application of the generator; trace-free by construction.
inline CMat lindblad_rhs(const QubitCavityState& state, const SystemParams& params,
                         const EvolveOptions& opts = {}) {
    return LindbladGenerator(params, state.n_max, opts).apply(state.matrix);
}

// Fixed-step fourth-order integration; validates the state invariants after
// every step and aborts with a diagnostic if they break (step too large).
inline QubitCavityState evolve(const QubitCavityState& initial, const SystemParams& params,
                               double t, double dt, const EvolveOptions& opts = {}) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    const double scale = std::max({params.g, params.gamma, std::abs(opts.bare_frequency)});
    if (!(dt > 0.0) || dt > 0.01 / scale + 1e-15)
        throw std::invalid_argument("step too large: require dt <= 0.01/max(g, gamma, omega)");
    if (initial.n_max < 1) throw std::invalid_argument("need n_max >= 1");

    const LindbladGenerator gen(params, initial.n_max, opts);
    QubitCavityState state = initial;
    if (t == 0.0) return state;

    const auto n = static_cast<std::size_t>(std::ceil(t / dt - 1e-12));
    const double h = t / static_cast<double>(n);
    for (std::size_t step = 0; step < n; ++step) {
        const CMat k1 = gen.apply(state.matrix);
        const CMat k2 = gen.apply(state.matrix + (0.5 * h) * k1);
        const CMat k3 = gen.apply(state.matrix + (0.5 * h) * k2);
        const CMat k4 = gen.apply(state.matrix + h * k3);
        state.matrix += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        try {
            state.validate();
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string(e.what()) + " at step " +
                                     std::to_string(step + 1) + " of " + std::to_string(n));
        }
    }
    return state;
}

}  // namespace qcorr
