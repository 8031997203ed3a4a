#include <doctest.h>

#include "cyclog/analytic.hpp"
#include "cyclog/cyclo.hpp"
#include "cyclog/errors.hpp"
#include "cyclog/naive.hpp"
#include "cyclog/padic.hpp"

using namespace cyclog;

TEST_CASE("reference log matches a hand-built partial sum") {
    // Denominators are kept coprime to p so the expected value assembles
    // from plain ring operations and unit scalars.
    const long M = 10;

    SUBCASE("p = 3, two terms") {
        const long p = 3;
        const CycloElt x = CycloElt::pi(p, M) +
                           CycloElt::pi(p, M).pow(2).mul_small(2);
        const CycloElt expected =
            x - (x * x).mul_scalar(PadicNumber::from_rational(1, 2, p, M));
        CHECK(naive_log1p(x, 2) == expected);
    }
    SUBCASE("p = 5, four terms") {
        const long p = 5;
        const CycloElt x = CycloElt::pi(p, M).mul_small(3) +
                           CycloElt::pi(p, M).pow(3).mul_small(4);
        const CycloElt x2 = x * x;
        const CycloElt x3 = x2 * x;
        const CycloElt x4 = x3 * x;
        const CycloElt expected =
            x - x2.mul_scalar(PadicNumber::from_rational(1, 2, p, M)) +
            x3.mul_scalar(PadicNumber::from_rational(1, 3, p, M)) -
            x4.mul_scalar(PadicNumber::from_rational(1, 4, p, M));
        CHECK(naive_log1p(x, 4) == expected);
    }
    SUBCASE("p = 7, six terms") {
        const long p = 7;
        const CycloElt x = random_element(p, M, RandomShape::in_m_pow, 1, 0x51u);
        CycloElt acc = x;
        CycloElt power = x;
        for (long n = 2; n <= 6; ++n) {
            power = power * x;
            const auto c = PadicNumber::from_rational(n % 2 ? 1 : -1, n, p, M);
            acc = acc + power.mul_scalar(c);
        }
        CHECK(naive_log1p(x, 6) == acc);
    }
}

TEST_CASE("reference exp matches a hand-built partial sum") {
    const long p = 5;
    const long M = 10;
    const CycloElt x = CycloElt::pi(p, M).pow(2).mul_small(3) +
                       CycloElt::pi(p, M).pow(5);
    const CycloElt one = CycloElt::one(p, M);
    const CycloElt expected =
        one + x + (x * x).mul_scalar(PadicNumber::from_rational(1, 2, p, M)) +
        (x * x * x).mul_scalar(PadicNumber::from_rational(1, 6, p, M)) +
        (x * x * x * x).mul_scalar(PadicNumber::from_rational(1, 24, p, M));
    CHECK(naive_exp(x, 4) == expected);
    CHECK(naive_exp(CycloElt::zero(p, M), 7) == one);
}

TEST_CASE("reference log agrees with the grouped kernel to certified digits") {
    const long M = 10;
    for (long p : {3L, 5L, 7L}) {
        // Interior points, annulus points, and deep points.
        for (uint64_t seed : {1u, 2u, 3u, 4u}) {
            CAPTURE(p);
            CAPTURE(seed);
            const CycloElt x = random_element(p, M, RandomShape::in_m_pow,
                                              1 + static_cast<long>(seed % 3),
                                              seed * 977u + 5);
            if (x.is_zero()) continue;
            const AnalyticResult lg =
                log1p(x, best_log_target(p, valuation_pi(x), M));
            const CycloElt ref = naive_log1p(x, lg.cert.n_max);
            CHECK(naive_matches(ref, lg.value, lg.cert.achieved));
            // The certified digits agree exactly: the difference at min
            // precision is the flagged zero.
            CHECK((ref.at_coeff_prec(lg.value.coeff_prec()) - lg.value).is_zero());
        }
    }
}

TEST_CASE("reference exp agrees with the grouped kernel to certified digits") {
    const long M = 10;
    for (long p : {3L, 5L, 7L}) {
        for (uint64_t seed : {11u, 12u, 13u}) {
            CAPTURE(p);
            CAPTURE(seed);
            const CycloElt z = random_element(p, M, RandomShape::in_m_pow, 2,
                                              seed * 31337u + 1);
            if (z.is_zero()) continue;
            const AnalyticResult e =
                exp_map(z, best_exp_target(p, valuation_pi(z), M));
            const CycloElt ref = naive_exp(z, e.cert.n_max);
            CHECK(naive_matches(ref, e.value, e.cert.achieved));
        }
    }
}

TEST_CASE("reference log annihilates the roots of unity at full precision") {
    const long M = 10;
    for (long p : {3L, 5L, 7L}) {
        CAPTURE(p);
        const CycloElt one = CycloElt::one(p, M);
        const CycloElt zeta = CycloElt::zeta(p, M);
        for (long j = 1; j < p; ++j) {
            const CycloElt x = zeta.pow(static_cast<unsigned long>(j)) - one;
            const AnalyticResult lg = log1p(x, (p - 1) * M);
            const CycloElt ref = naive_log1p(x, lg.cert.n_max);
            // The reference keeps all M coefficient digits and still lands on
            // exact zero: the whole partial sum vanishes mod p^M.
            CHECK(ref.is_zero());
            CHECK(ref.coeff_prec() == M);
        }
    }
}

TEST_CASE("reference summation rejects out-of-domain input") {
    const long p = 5;
    const long M = 8;
    CHECK_THROWS_AS(naive_log1p(CycloElt::one(p, M), 10), outside_domain);
    CHECK_THROWS_AS(naive_log1p(CycloElt::pi(p, M), 0), outside_domain);
    CHECK_THROWS_AS(naive_exp(CycloElt::pi(p, M), 10), outside_domain);
    CHECK_THROWS_AS(naive_exp(CycloElt::pi(p, M), -1), outside_domain);
}

TEST_CASE("match predicate compares exactly the certified digits") {
    const long p = 5;
    const long M = 8;
    const CycloElt a = random_element(p, M, RandomShape::unit, 0, 0xabcu);
    CHECK(naive_matches(a, a, a.pi_prec()));

    // Perturb at depth 3: agreement holds to 3 digits, fails from 4 on.
    const CycloElt b = a + CycloElt::pi(p, M).pow(3).mul_small(2);
    CHECK(naive_matches(a, b, 3));
    CHECK_FALSE(naive_matches(a, b, 4));

    // Requests beyond the stored precision cap at what is actually known.
    CHECK(naive_matches(a, a, 1000000));
}
