#include <doctest.h>

#include "cyclog/filtration.hpp"
#include "oracles.hpp"

using namespace cyclog;

TEST_CASE("filtration level reads the valuation of u - 1") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        CycloElt one = CycloElt::one(p, M);
        CycloElt pi = CycloElt::pi(p, M);

        CHECK(filtration_level(CycloElt::zeta(p, M)) == 1);
        CHECK(filtration_level(one + pi.pow(2).mul_small(p - 1)) == 2);
        CHECK(filtration_level(one + pi.pow(3)) == 3);
        CHECK(filtration_level(one) == kPiValuationInfinity);
        // a non-principal unit sits at level 0
        CHECK(filtration_level(CycloElt::from_integer(2, p, M)) == 0);
        // non-units are rejected
        CHECK_THROWS_AS(filtration_level(pi), not_a_unit&);
        CHECK_THROWS_AS(filtration_level(CycloElt::zero(p, M)), not_a_unit&);
    }
}

TEST_CASE("splitting a principal unit into root of unity times deep unit") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        CycloElt zeta = CycloElt::zeta(p, M);
        SplitMix64 rng(0x5b1e + static_cast<uint64_t>(p));

        for (int trial = 0; trial < 12; ++trial) {
            CycloElt u = CycloElt::one(p, M) +
                         random_element(p, M, RandomShape::in_m_pow, 1, rng.next());
            SplitDecomposition d = split_U1(u);
            CHECK(d.j >= 0);
            CHECK(d.j < p);
            CHECK(filtration_level(d.u2) >= 2);
            // exact reassembly
            CHECK(zeta.pow(static_cast<unsigned long>(d.j)) * d.u2 == u);
            // uniqueness: no other power of zeta brings u into U^(2)
            for (long jj = 0; jj < p; ++jj) {
                if (jj == d.j) continue;
                CycloElt other = zeta.pow(static_cast<unsigned long>((p - jj) % p)) * u;
                CHECK(filtration_level(other) == 1);
            }
        }

        // each root of unity splits as itself
        for (long j = 1; j < p; ++j) {
            SplitDecomposition d = split_U1(zeta.pow(static_cast<unsigned long>(j)));
            CHECK(d.j == j);
            CHECK(d.u2.is_one());
        }
        // deep units split trivially
        CycloElt deep = CycloElt::one(p, M) +
                        random_element(p, M, RandomShape::in_m_pow, 2, rng.next());
        SplitDecomposition d = split_U1(deep);
        CHECK(d.j == 0);
        CHECK(d.u2 == deep);

        CHECK_THROWS_AS(split_U1(CycloElt::from_integer(2, p, M)), not_in_u1&);
    }
}

TEST_CASE("graded classes: hand values") {
    const long p = 5, M = 8;
    CycloElt one = CycloElt::one(p, M);
    CycloElt pi = CycloElt::pi(p, M);

    CHECK(graded_class(CycloElt::from_integer(2, p, M), 0) == 2);
    CHECK(graded_class(CycloElt::from_integer(7, p, M), 0) == 2);
    CHECK(graded_class(CycloElt::zeta(p, M), 1) == 1);
    CHECK(graded_class(one + pi.mul_small(3), 1) == 3);
    CHECK(graded_class(one + pi.pow(2), 1) == 0);  // kernel: lies in U^(2)
    CHECK(graded_class(one + pi.pow(2).mul_small(4), 2) == 4);
    CHECK_THROWS_AS(graded_class(one + pi, 2), not_in_u1&);
    CHECK_THROWS_AS(graded_class(pi, 0), not_a_unit&);
}

TEST_CASE("U1 mod U2 has exactly p classes") {
    for (long p : {3L, 5L, 7L}) {
        OrderCheckReport rep = order_check_U1_mod_U2(p, 8, 60, 42);
        CHECK(rep.p == p);
        CHECK(rep.classes == p);
        CHECK(rep.all_covered);
        CHECK(rep.pass);
    }
}

TEST_CASE("graded quotients are residue-field lines") {
    for (long p : {3L, 5L, 7L}) {
        for (long i : {0L, 1L, 2L, 3L}) {
            QuotientIsoReport rep = quotient_iso_check(i, p, 10, 120, 4242 + i);
            CHECK(rep.hom_failures == 0);
            CHECK(rep.kernel_failures == 0);
            CHECK(rep.expected_classes == (i == 0 ? p - 1 : p));
            CHECK(rep.classes_hit == rep.expected_classes);
            CHECK(rep.pass);
        }
        CHECK_THROWS_AS(quotient_iso_check(10 * (p - 1), p, 10, 5, 1),
                        precision_exhausted&);
    }
}

TEST_CASE("valuation is a homomorphism onto small values") {
    // v(ab) = v(a) + v(b) on random elements, and every small value is hit
    // by an explicit element.
    for (long p : {3L, 5L}) {
        const long M = 10;
        SplitMix64 rng(0xa11ce + static_cast<uint64_t>(p));
        for (int trial = 0; trial < 10; ++trial) {
            long ka = 1 + static_cast<long>(rng.below(3));
            long kb = 1 + static_cast<long>(rng.below(3));
            CycloElt a = random_element(p, M, RandomShape::in_m_pow, ka, rng.next());
            CycloElt b = random_element(p, M, RandomShape::in_m_pow, kb, rng.next());
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(valuation_pi(a * b) == valuation_pi(a) + valuation_pi(b));
        }
        for (long v = 0; v <= 2 * (p - 1); ++v)
            CHECK(valuation_pi(CycloElt::pi(p, M).pow(static_cast<unsigned long>(v))) == v);
    }
}
