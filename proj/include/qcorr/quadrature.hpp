// Deterministic composite-Simpson quadrature used across the library.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace qcorr {

// Composite Simpson rule with n subintervals (n forced even).
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (!(b >= a)) throw std::invalid_argument("simpson: inverted interval");
    if (a == b) return 0.0;
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        const double x = a + h * static_cast<double>(i);
        sum += f(x) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

// Simpson with doubling refinement: stops when two consecutive levels agree
// to abs_tol or the level cap is hit. Deterministic for a given argument set.
template <typename F>
double simpson_refined(F&& f, double a, double b, double abs_tol,
                       std::size_t n0 = 64, int max_doublings = 14) {
    std::size_t n = n0;
    double prev = simpson(f, a, b, n);
    for (int level = 0; level < max_doublings; ++level) {
        n *= 2;
        const double cur = simpson(f, a, b, n);
        if (std::abs(cur - prev) <= abs_tol) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace qcorr
