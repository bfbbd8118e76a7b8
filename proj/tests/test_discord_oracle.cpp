#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcorr/discord_oracle.hpp"

using namespace qcorr;

namespace {

CMat bell_matrix() {
    // (|00> + |11>) / sqrt(2)
    CMat m(4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    m(0, 3) = 0.5;
    m(3, 0) = 0.5;
    return m;
}

CMat product_matrix(double pa, double pb) {
    CMat a(2), b(2);
    a(0, 0) = 1.0 - pa;
    a(1, 1) = pa;
    a(0, 1) = 0.3 * std::sqrt(pa * (1.0 - pa));
    a(1, 0) = a(0, 1);
    b(0, 0) = 1.0 - pb;
    b(1, 1) = pb;
    return kron(a, b);
}

// swap the two parties of a two-qubit matrix
CMat swap_parties(const CMat& m) {
    auto perm = [](std::size_t i) { return (i & 1u) * 2u + (i >> 1u); };
    CMat out(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out(perm(i), perm(j)) = m(i, j);
    return out;
}

}  // namespace

TEST_CASE("measurement on B reveals nothing about A in a product state") {
    const CMat rho = product_matrix(0.3, 0.6);
    DetRng rng(11);
    for (int i = 0; i < 25; ++i) {
        const MeasurementBasis basis{rng.uniform(0.0, std::numbers::pi),
                                     rng.uniform(0.0, 2.0 * std::numbers::pi)};
        CHECK(std::abs(measured_information(rho, basis)) < 1e-12);
    }
}

TEST_CASE("Bell state yields one bit in every basis") {
    const CMat rho = bell_matrix();
    CHECK(measured_information(rho, MeasurementBasis{0.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    double lo = 2.0, hi = 0.0;
    DetRng rng(17);
    for (int i = 0; i < 100; ++i) {
        const MeasurementBasis basis{rng.uniform(0.0, std::numbers::pi),
                                     rng.uniform(0.0, 2.0 * std::numbers::pi)};
        const double v = measured_information(rho, basis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-10);
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("invalid density matrices are rejected") {
    CMat bad(4);
    bad(0, 0) = 2.0;
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(measured_information(bad, MeasurementBasis{}), std::invalid_argument);
    CHECK_THROWS_AS(discord_brute_force(bad), std::invalid_argument);
    CHECK_THROWS_AS(measured_information(CMat(3), MeasurementBasis{}), std::invalid_argument);
}

TEST_CASE("classical-diagonal states carry zero discord") {
    CMat diag(4);
    diag(0, 0) = 0.4;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.2;
    diag(3, 3) = 0.1;
    CHECK(discord_brute_force(diag) < 1e-9);

    // any symmetric X state without coherences stays classical
    DetRng rng(23);
    for (int i = 0; i < 10; ++i) {
        XState x = random_symmetric_xstate(rng);
        const XState stripped(x.p_both, x.p_one, x.p_none, {0.0, 0.0}, {0.0, 0.0});
        CHECK(discord_brute_force(to_matrix(stripped)) < 1e-9);
    }
}

TEST_CASE("pure-state discord equals the reduced entropy") {
    // alpha |00> + beta |11> with alpha^2 = 1/3
    const double alpha = 1.0 / std::sqrt(3.0);
    const double beta = std::sqrt(2.0 / 3.0);
    CMat rho(4);
    rho(0, 0) = alpha * alpha;
    rho(3, 3) = beta * beta;
    rho(0, 3) = alpha * beta;
    rho(3, 0) = alpha * beta;
    CHECK(std::abs(discord_brute_force(rho) - 0.918296) < 1e-5);
    // the same number from the independent closed form log2(3) - 2/3
    CHECK(std::abs(discord_brute_force(rho) - (std::log2(3.0) - 2.0 / 3.0)) < 1e-9);
}

TEST_CASE("search result dominates any single measurement") {
    DetRng rng(31);
    for (int i = 0; i < 5; ++i) {
        const XState x = random_symmetric_xstate(rng);
        const CMat rho = to_matrix(x);
        const auto sr = measurement_search(rho);
        for (int k = 0; k < 40; ++k) {
            const MeasurementBasis basis{rng.uniform(0.0, std::numbers::pi),
                                         rng.uniform(0.0, 2.0 * std::numbers::pi)};
            CHECK(sr.classical + 1e-12 >= measured_information(rho, basis));
        }
        CHECK(sr.discord >= 0.0);
        CHECK(std::abs(sr.mutual - mutual_information(rho)) < 1e-12);
    }
}

TEST_CASE("measuring either party gives the same classical correlations") {
    DetRng rng(37);
    for (int i = 0; i < 15; ++i) {
        const XState x = random_symmetric_xstate(rng);
        const CMat rho = to_matrix(x);
        const auto direct = measurement_search(rho);
        const auto swapped = measurement_search(swap_parties(rho));
        CHECK(std::abs(direct.classical - swapped.classical) < 1e-6);
    }
}

TEST_CASE("random symmetric states are valid and reproducible") {
    DetRng rng_a(123), rng_b(123);
    for (int i = 0; i < 50; ++i) {
        const XState xa = random_symmetric_xstate(rng_a);
        const XState xb = random_symmetric_xstate(rng_b);
        CHECK(xa.p_both == xb.p_both);
        CHECK(xa.coh_outer == xb.coh_outer);
        CHECK(xa.p_both + 2.0 * xa.p_one + xa.p_none == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_NOTHROW(require_density_matrix(to_matrix(xa)));
    }
}
