#include <doctest.h>

#include <vector>

#include "cyclog/series.hpp"
#include "oracles.hpp"

using namespace cyclog;

namespace {

// Factorial as an exact integer.
mpz_class factorial(long n) {
    mpz_class f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// Coefficientwise residue agreement at the shared precision.
bool series_match(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.D != b.D) return false;
    for (long i = 0; i <= a.D; ++i)
        if (!PadicNumber::same_residue(a.at(i), b.at(i))) return false;
    return true;
}

} // namespace

TEST_CASE("univariate series ring basics") {
    const long p = 5, N = 12, D = 6;
    TruncatedSeries t = TruncatedSeries::variable(p, N, D);

    // (1 + T)^2 = 1 + 2T + T^2
    TruncatedSeries one_plus_t = t;
    one_plus_t.set(0, PadicNumber::from_integer(1, p, N));
    TruncatedSeries sq = ts_mul(one_plus_t, one_plus_t);
    CHECK(sq.at(0) == PadicNumber::from_integer(1, p, N));
    CHECK(sq.at(1) == PadicNumber::from_integer(2, p, N));
    CHECK(sq.at(2) == PadicNumber::from_integer(1, p, N));
    for (long i = 3; i <= D; ++i) CHECK(sq.at(i).is_zero());

    // derivative then integral returns the original (up to the constant term)
    TruncatedSeries back = ts_integrate(ts_derivative(sq));
    for (long i = 1; i <= std::min(back.D, sq.D); ++i)
        CHECK(PadicNumber::same_residue(back.at(i), sq.at(i)));

    // geometric inverse: 1/(1 + T) = sum (-T)^n
    TruncatedSeries inv = ts_invert_unit(one_plus_t);
    for (long i = 0; i <= D; ++i)
        CHECK(inv.at(i) == PadicNumber::from_integer(i % 2 == 0 ? 1 : -1, p, N));

    // compose u(v) with u = T^2, v = T + T^2: (T + T^2)^2 = T^2 + 2T^3 + T^4
    TruncatedSeries u = TruncatedSeries::zeros(p, N, D);
    u.set(2, PadicNumber::from_integer(1, p, N));
    TruncatedSeries v = TruncatedSeries::variable(p, N, D);
    v.set(2, PadicNumber::from_integer(1, p, N));
    TruncatedSeries w = ts_compose(u, v);
    CHECK(w.at(2) == PadicNumber::from_integer(1, p, N));
    CHECK(w.at(3) == PadicNumber::from_integer(2, p, N));
    CHECK(w.at(4) == PadicNumber::from_integer(1, p, N));
    CHECK(w.at(5).is_zero());

    CHECK_THROWS_AS(ts_compose(u, one_plus_t), error&);
}

TEST_CASE("series reversion inverts composition") {
    const long p = 7, N = 10, D = 8;
    // a(T) = T + 3T^2 + T^3
    TruncatedSeries a = TruncatedSeries::variable(p, N, D);
    a.set(2, PadicNumber::from_integer(3, p, N));
    a.set(3, PadicNumber::from_integer(1, p, N));
    TruncatedSeries r = ts_reversion(a);
    TruncatedSeries round = ts_compose(r, a);
    TruncatedSeries id = TruncatedSeries::variable(p, N, D);
    CHECK(series_match(round, id));
    TruncatedSeries other = ts_compose(a, r);
    CHECK(series_match(other, id));
}

TEST_CASE("formal group law axioms for the canonical laws") {
    for (long p : {3L, 5L, 7L}) {
        const long N = 12, D = 8;
        AxiomReport m = verify_fgl_axioms(multiplicative_law(p, N, D));
        CHECK(m.linear_part_ok);
        CHECK(m.identity_ok);
        CHECK(m.commutative_ok);
        CHECK(m.associative_ok);
        CHECK(m.pass());
        CHECK(m.violations.empty());

        AxiomReport a = verify_fgl_axioms(additive_law(p, N, D));
        CHECK(a.pass());
    }
}

TEST_CASE("broken laws are reported with the offending monomial") {
    const long p = 5, N = 10, D = 6;

    // F = X + Y + X^2 fails the identity axiom (F(X,0) != X).
    BivariateSeries f = additive_law(p, N, D);
    f.set(2, 0, PadicNumber::from_integer(1, p, N));
    AxiomReport rep = verify_fgl_axioms(f);
    CHECK_FALSE(rep.identity_ok);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.violations.empty());

    // F = X + Y + X^2 Y is symmetric? no: coefficient (2,1) vs (1,2) differ.
    BivariateSeries g = additive_law(p, N, D);
    g.set(2, 1, PadicNumber::from_integer(1, p, N));
    AxiomReport rep2 = verify_fgl_axioms(g);
    CHECK_FALSE(rep2.commutative_ok);

    // F = X + Y + XY + X^2Y^2 passes everything except associativity.
    BivariateSeries h = multiplicative_law(p, N, D);
    h.set(2, 2, PadicNumber::from_integer(1, p, N));
    AxiomReport rep3 = verify_fgl_axioms(h);
    CHECK(rep3.linear_part_ok);
    CHECK(rep3.identity_ok);
    CHECK(rep3.commutative_ok);
    CHECK_FALSE(rep3.associative_ok);
}

TEST_CASE("formal inverse of the multiplicative law is the geometric series") {
    for (long p : {3L, 5L}) {
        const long N = 12, D = 8;
        TruncatedSeries iota = formal_inverse(multiplicative_law(p, N, D));
        // 1/(1+T) - 1 = -T + T^2 - T^3 + ...
        CHECK(iota.at(0).is_zero());
        for (long n = 1; n <= D; ++n)
            CHECK(PadicNumber::same_residue(
                iota.at(n), PadicNumber::from_integer(n % 2 == 1 ? -1 : 1, p, N)));
        // F(T, iota(T)) = 0
        BivariateSeries F = multiplicative_law(p, N, D);
        TruncatedSeries z =
            bs_compose_two_univariate(F, TruncatedSeries::variable(p, N, D), iota);
        for (long n = 0; n <= D; ++n)
            CHECK(PadicNumber::same_residue(z.at(n), PadicNumber::zero(p, N)));
    }
}

TEST_CASE("invariant differential and formal logarithm of the multiplicative law") {
    for (long p : {3L, 5L, 7L}) {
        const long N = 14, D = 8;
        BivariateSeries F = multiplicative_law(p, N, D);

        TruncatedSeries rho = invariant_differential(F);
        for (long n = 0; n <= rho.D; ++n)
            CHECK(PadicNumber::same_residue(
                rho.at(n), PadicNumber::from_integer(n % 2 == 0 ? 1 : -1, p, N)));

        // L(T) = T - T^2/2 + T^3/3 - ... with the exact rational coefficients.
        TruncatedSeries L = formal_log(F);
        CHECK(L.at(0).is_zero());
        for (long n = 1; n <= L.D; ++n) {
            PadicNumber expected = PadicNumber::from_rational(
                n % 2 == 1 ? 1 : -1, n, p, L.at(n).precision());
            CHECK(L.at(n) == expected);
        }
        // the coefficient at n = p genuinely has valuation -1
        CHECK(L.at(p).valuation() == -1);

        // E = L^(-1) is exp(T) - 1: coefficients 1/n!.
        TruncatedSeries E = formal_exp(L);
        for (long n = 1; n <= E.D; ++n) {
            PadicNumber expected = PadicNumber::from_rational(
                1, factorial(n), p, E.at(n).precision());
            CHECK(E.at(n) == expected);
        }
    }
}

TEST_CASE("formal logarithm is a homomorphism to the additive law") {
    for (long p : {3L, 5L}) {
        const long N = 16, D = 6;
        BivariateSeries M = multiplicative_law(p, N, D);
        BivariateSeries A = additive_law(p, N, D);
        TruncatedSeries L = formal_log(M);
        CHECK(is_homomorphism(L, M, A));

        // identity is a homomorphism M -> M
        CHECK(is_homomorphism(TruncatedSeries::variable(p, N, D), M, M));

        // T + T^2 is not a homomorphism M -> A
        TruncatedSeries bad = TruncatedSeries::variable(p, N, D);
        bad.set(2, PadicNumber::from_integer(1, p, N));
        CHECK_FALSE(is_homomorphism(bad, M, A));
    }
}

TEST_CASE("formal sum evaluation matches the closed multiplicative formula") {
    for (long p : {3L, 5L, 7L}) {
        const long m = 8, D = 8;
        BivariateSeries F = multiplicative_law(p, m * 2, D);
        SplitMix64 rng(0x5eedULL + static_cast<uint64_t>(p));
        for (int trial = 0; trial < 10; ++trial) {
            CycloElt a = random_element(p, m, RandomShape::in_m_pow, 1, rng.next());
            CycloElt b = random_element(p, m, RandomShape::in_m_pow, 1, rng.next());
            CycloElt direct = a + b + a * b;
            CycloElt viaF = fgl_add(F, a, b);
            CHECK(viaF == direct.at_coeff_prec(viaF.coeff_prec()));
        }
        // group identity: F(a, 0) = a
        CycloElt a = random_element(p, m, RandomShape::in_m_pow, 2, rng.next());
        CycloElt s = fgl_add(F, a, CycloElt::zero(p, m));
        CHECK(s == a.at_coeff_prec(s.coeff_prec()));
        // outside the maximal ideal: rejected
        CHECK_THROWS_AS(fgl_add(F, CycloElt::one(p, m), a), outside_maximal_ideal&);
    }
}

TEST_CASE("formal sum against the independent polynomial oracle") {
    // Evaluate X + Y + XY inside the oracle's own polynomial ring and compare
    // coordinates.
    const long p = 5, m = 6, D = 4;
    BivariateSeries F = multiplicative_law(p, 2 * m, D);
    testoracle::PolyRing R(p, m);
    SplitMix64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        CycloElt a = random_element(p, m, RandomShape::in_m_pow, 1, rng.next());
        CycloElt b = random_element(p, m, RandomShape::in_m_pow, 1, rng.next());
        CycloElt got = fgl_add(F, a, b);

        std::vector<mpz_class> av = a.coords(), bv = b.coords();
        std::vector<mpz_class> sum = R.add(av, bv);
        std::vector<mpz_class> prod = R.mul(av, bv);
        std::vector<mpz_class> expect = R.add(sum, prod);
        for (long j = 0; j < p - 1; ++j) {
            mpz_class e = expect[static_cast<size_t>(j)] % pow_p(p, got.coeff_prec());
            if (e < 0) e += pow_p(p, got.coeff_prec());
            CHECK(got.coord(j) == e);
        }
    }
}
