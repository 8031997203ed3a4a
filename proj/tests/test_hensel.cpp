#include <doctest.h>

#include <algorithm>
#include <set>

#include "cyclog/analytic.hpp"
#include "cyclog/hensel.hpp"
#include "oracles.hpp"

using namespace cyclog;

namespace {

// Residue of x mod pi (constant coordinate mod p).
long res0(const CycloElt& x) {
    mpz_class r = x.coord(0) % x.prime();
    return r.get_si();
}

void check_trace(const LiftTrace& t, long target) {
    CHECK(t.final_residual_valuation >= target);
    long last = -1;
    for (const LiftStep& s : t.steps) {
        CHECK(s.n == last + 1);
        last = s.n;
        CHECK(s.digit >= 0);
        CHECK(s.residual_valuation >= s.n + 1);
        CHECK(s.taylor_ok);
        CHECK(s.derivative_residue == t.steps.front().derivative_residue);
    }
}

CycloElt rebuild_from_trace(const CycloElt& x0, const CycloElt& uni, const LiftTrace& t) {
    CycloElt acc = x0;
    for (const LiftStep& s : t.steps)
        acc = acc + uni.pow(static_cast<unsigned long>(s.n + 1)).mul_small(s.digit);
    return acc;
}

} // namespace

TEST_CASE("digit lifting recovers a linear root") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        SplitMix64 rng(0x11f7 + static_cast<uint64_t>(p));
        CycloElt a = random_element(p, M, RandomShape::unit, 0, rng.next());
        OKPolynomial f{{-a, CycloElt::one(p, M)}};
        CycloElt x0 = CycloElt::from_integer(res0(a), p, M);
        long target = (p - 1) * (M - 1);
        LiftResult r = newton_lift(f, x0, CycloElt::pi(p, M), target);
        CycloElt diff = r.root - a;
        long v = valuation_pi(diff);
        CHECK((v == kPiValuationInfinity || v >= target));
        check_trace(r.trace, target);
        CHECK(rebuild_from_trace(x0, CycloElt::pi(p, M), r.trace) == r.root);
    }
}

TEST_CASE("digit lifting solves x^2 = 1 + pi at p = 5") {
    const long p = 5, M = 10;
    CycloElt one = CycloElt::one(p, M);
    CycloElt pi = CycloElt::pi(p, M);
    OKPolynomial f{{-(one + pi), CycloElt::zero(p, M), one}};
    long target = 30;
    LiftResult r = newton_lift(f, one, pi, target);
    CycloElt check = r.root * r.root - (one + pi);
    long v = valuation_pi(check);
    CHECK((v == kPiValuationInfinity || v >= target));
    CHECK(res0(r.root) == 1);
    check_trace(r.trace, target);
    // the derivative 2x stays congruent to 2 mod pi along the whole lift
    CHECK(r.trace.steps.front().derivative_residue == 2);
    CHECK(rebuild_from_trace(one, pi, r.trace) == r.root);
}

TEST_CASE("digit lifting extracts (p-1)-st roots of principal units") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        SplitMix64 rng(0xf001 + static_cast<uint64_t>(p));
        CycloElt c = CycloElt::one(p, M) +
                     random_element(p, M, RandomShape::in_m_pow, 1, rng.next());
        std::vector<CycloElt> coeffs(static_cast<size_t>(p), CycloElt::zero(p, M));
        coeffs[0] = -c;
        coeffs[static_cast<size_t>(p - 1)] = CycloElt::one(p, M);
        OKPolynomial f{coeffs};
        long target = (p - 1) * (M - 2);
        LiftResult r = newton_lift(f, CycloElt::one(p, M), CycloElt::pi(p, M), target);
        CycloElt back = r.root.pow(static_cast<unsigned long>(p - 1)) - c;
        long v = valuation_pi(back);
        CHECK((v == kPiValuationInfinity || v >= target));
        CHECK(res0(r.root) == 1);
        check_trace(r.trace, target);
    }
}

TEST_CASE("degenerate starts are rejected") {
    const long p = 5, M = 8;
    CycloElt one = CycloElt::one(p, M);
    CycloElt pi = CycloElt::pi(p, M);

    // double root: derivative vanishes at the start
    OKPolynomial sq{{CycloElt::zero(p, M), CycloElt::zero(p, M), one}};
    CHECK_THROWS_AS(newton_lift(sq, pi, pi, 6), simple_root_violation&);

    // start is not a root modulo pi
    OKPolynomial lin{{-one, one}};
    CHECK_THROWS_AS(newton_lift(lin, CycloElt::zero(p, M), pi, 6),
                    simple_root_violation&);

    // the lifting element must be a uniformizer
    CHECK_THROWS_AS(newton_lift(lin, one, one, 6), outside_domain&);

    // unreachable targets are rejected up front
    CHECK_THROWS_AS(newton_lift(lin, one, pi, (p - 1) * M + 5), precision_exhausted&);
}

TEST_CASE("phi series stores the documented coefficients") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        CycloElt pi2 = neg_p_root(p, M);
        SplitMix64 rng(0xfee1 + static_cast<uint64_t>(p));
        CycloElt y = random_element(p, M, RandomShape::unit, 0, rng.next());
        const long D = 2 * p + 2;
        PhiSeries s = build_phi(y, pi2, D);
        CHECK(s.p == p);
        CHECK(s.D == D);
        CHECK(static_cast<long>(s.tail.size()) == D - 1);

        // t^2 coefficient: -1/2 for every prime
        CHECK(s.tail[0] ==
              CycloElt::from_scalar(PadicNumber::from_rational(-1, 2, p, M), M));
        // t^3 coefficient: pi2/3 once 3 is invertible
        if (p >= 5)
            CHECK(s.tail[1] == pi2 * cyclo_inv(CycloElt::from_integer(3, p, M)));
        // the t^p slot is empty
        CHECK(s.tail[static_cast<size_t>(p - 2)].is_zero());
        // t^(2p) needs one exact p-division: one coefficient digit is spent
        CHECK(s.tail[static_cast<size_t>(2 * p - 2)].coeff_prec() == M - 1);
        // and its value is pi2^(2p-2)/(2p) up to sign: cross-multiply to avoid
        // dividing in the test
        CycloElt lhs = s.tail[static_cast<size_t>(2 * p - 2)].mul_small(2 * p);
        CycloElt rhs = -pi2.pow(static_cast<unsigned long>(2 * p - 2));
        CHECK(lhs == rhs.at_coeff_prec(lhs.coeff_prec()));

        CHECK_THROWS_AS(build_phi(y, pi2, 1), outside_domain&);
    }
}

TEST_CASE("the integral lift equation reproduces the logarithm") {
    // pi2 * H(v) + pi2^2 * y == log(1 + pi2 v) for every unit v, up to the
    // shared truncation depth.
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        CycloElt pi2 = neg_p_root(p, M);
        SplitMix64 rng(0x1091c + static_cast<uint64_t>(p));
        CycloElt y = random_element(p, M, RandomShape::unit, 0, rng.next());
        const long T = 8;
        const long D = truncation_bound(p, 1, T + 2).n_max;
        OKPolynomial H = build_phi(y, pi2, D).lift_equation();

        for (int trial = 0; trial < 6; ++trial) {
            CycloElt v = random_element(p, M, RandomShape::unit, 0, rng.next());
            CycloElt rhs = pi2 * H.eval(v) + pi2 * pi2 * y;
            AnalyticResult lhs = log1p(pi2 * v, T + 2);
            CycloElt diff = lhs.value - rhs.at_coeff_prec(lhs.value.coeff_prec());
            long certified = std::min({lhs.cert.achieved, T + 2, diff.pi_prec()});
            long vd = valuation_pi(diff);
            CHECK((vd == kPiValuationInfinity || vd >= certified));
        }
    }
}

TEST_CASE("solving the annulus equation: solvable residues and exact relation") {
    for (long p : {3L, 5L, 7L}) {
        const long M = 10;
        CycloElt pi2 = neg_p_root(p, M);
        SplitMix64 rng(0x50afe + static_cast<uint64_t>(p));

        int solved_seen = 0, empty_seen = 0;
        for (int trial = 0; trial < 8; ++trial) {
            CycloElt y = random_element(p, M, RandomShape::unit, 0, rng.next());
            SolvePhiResult r = solve_phi(y, pi2, 0);

            // the gate must match the brute-force residue scan
            std::set<long> brute;
            long y0 = res0(y);
            for (long v = 1; v < p; ++v)
                if ((2 * y0 + v * v) % p == 0) brute.insert(v);
            std::set<long> got(r.solvable_residues.begin(), r.solvable_residues.end());
            CHECK(got == brute);

            if (r.status == SolveStatus::no_residue_solution) {
                ++empty_seen;
                CHECK(r.solutions.empty());
                CHECK(brute.empty());
                continue;
            }
            ++solved_seen;
            CHECK(r.solutions.size() == brute.size());
            for (const PhiSolution& sol : r.solutions) {
                CHECK(res0(sol.x0) == sol.start_residue);
                CHECK(valuation_pi(sol.x0) == 0);
                check_trace(sol.trace, r.target);
                // the derivative of the lift equation is 1 mod pi
                CHECK(sol.trace.steps.front().derivative_residue == 1);

                // log(1 + pi2 x0) = pi2^2 y at certified precision
                AnalyticResult lg = log1p(pi2 * sol.x0, r.target + 1);
                CycloElt rhs = (pi2 * pi2 * y).at_coeff_prec(lg.value.coeff_prec());
                CycloElt diff = lg.value - rhs;
                long certified =
                    std::min({lg.cert.achieved, r.target + 1, diff.pi_prec()});
                long vd = valuation_pi(diff);
                CHECK((vd == kPiValuationInfinity || vd >= certified));
            }
        }
        CHECK(solved_seen > 0);
        if (p > 3) CHECK(empty_seen > 0);
    }
}

TEST_CASE("annulus equation: explicit solvability table at p = 5") {
    const long p = 5, M = 8;
    CycloElt pi2 = neg_p_root(p, M);
    // -v^2/2 mod 5 over v = 1..4 is {2, 3}: exactly the Teichmuller digits
    // that admit solutions.
    std::set<long> attainable;
    for (long v = 1; v < p; ++v) {
        long inv2 = 3; // 1/2 mod 5
        attainable.insert(((p - ((v * v) % p)) * inv2) % p);
    }
    CHECK(attainable == std::set<long>{2, 3});

    for (long a = 1; a < p; ++a) {
        CycloElt y = CycloElt::from_integer(a, p, M);
        SolvePhiResult r = solve_phi(y, pi2, 12);
        bool should_solve = attainable.count(a) > 0;
        CHECK((r.status == SolveStatus::solved) == should_solve);
    }
}

TEST_CASE("annulus equation rejects bad inputs") {
    const long p = 5, M = 8;
    CycloElt pi2 = neg_p_root(p, M);
    CycloElt y = CycloElt::from_integer(2, p, M);
    CHECK_THROWS_AS(solve_phi(CycloElt::pi(p, M), pi2, 8), not_a_unit&);
    CHECK_THROWS_AS(solve_phi(y, CycloElt::pi(p, M), 8), outside_domain&);
    CHECK_THROWS_AS(build_phi(y, CycloElt::zeta(3, M), 6), prime_mismatch&);
}
