// Small dense complex-matrix helpers sized for few-level quantum systems.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qcorr {

using cdouble = std::complex<double>;

// Row-major square complex matrix. Dimensions here never exceed a dozen or
// so (two qubits, qubit x truncated Fock space), so everything is plain
// O(n^3) with no blocking.
class CMat {
public:
    CMat() = default;
    explicit CMat(std::size_t n) : n_(n), data_(n * n, cdouble{0.0, 0.0}) {}

    static CMat identity(std::size_t n) {
        CMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    CMat& operator+=(const CMat& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    CMat& operator*=(cdouble s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cdouble s) { return a *= s; }
    friend CMat operator*(cdouble s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        a.check_same_dim(b);
        const std::size_t n = a.n_;
        CMat c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble aik = a(i, k);
                if (aik == cdouble{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    CMat adjoint() const {
        CMat c(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) c(j, i) = std::conj((*this)(i, j));
        return c;
    }

    cdouble trace() const {
        cdouble t{0.0, 0.0};
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    // Largest |A(i,j) - conj(A(j,i))| over all entries.
    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

private:
    void check_same_dim(const CMat& o) const {
        if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t n_ = 0;
    std::vector<cdouble> data_;
};

inline CMat kron(const CMat& a, const CMat& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    CMat c(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    c(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return c;
}

// Partial traces of a bipartite matrix on C^{da} (x) C^{db},
// index convention row = ia*db + ib.
inline CMat partial_trace_second(const CMat& m, std::size_t da, std::size_t db) {
    if (m.dim() != da * db) throw std::invalid_argument("partial trace: bad dimensions");
    CMat r(da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k) r(i, j) += m(i * db + k, j * db + k);
    return r;
}

inline CMat partial_trace_first(const CMat& m, std::size_t da, std::size_t db) {
    if (m.dim() != da * db) throw std::invalid_argument("partial trace: bad dimensions");
    CMat r(db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k) r(i, j) += m(k * db + i, k * db + j);
    return r;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps with complex
// rotations. Returns the spectrum sorted ascending. Input is symmetrized
// internally; callers validate Hermiticity to their own tolerance.
inline std::vector<double> hermitian_eigenvalues(CMat a) {
    const std::size_t n = a.dim();
    if (n == 0) return {};
    // Work on the exact Hermitian part so the invariant below is clean.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cdouble{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off < 1e-30) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double m = std::abs(apq);
                if (m < 1e-300) continue;
                const cdouble phase = apq / m;

                // Rotation angle annihilating the (p,q) element.
                const double beta = (a(q, q).real() - a(p, p).real()) / (2.0 * m);
                const double t = (beta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(beta) + std::sqrt(1.0 + beta * beta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: col_p' = c*col_p - s*conj(phase)*col_q,
                //          col_q' = s*phase*col_p + c*col_q, then same on rows.
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble aip = a(i, p);
                    const cdouble aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble apj = a(p, j);
                    const cdouble aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Validates the three density-matrix properties and throws on violation.
inline void require_density_matrix(const CMat& rho, double tol = 1e-10) {
    if (rho.hermiticity_defect() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cdouble{1.0, 0.0}) > tol)
        throw std::invalid_argument("density matrix trace differs from 1");
    const auto eig = hermitian_eigenvalues(rho);
    if (!eig.empty() && eig.front() < -tol)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

}  // namespace qcorr
