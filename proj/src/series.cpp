#include "cyclog/series.hpp"

#include <algorithm>

namespace cyclog {

namespace {

PadicNumber acc_zero(long p, long prec_a, long prec_b) {
    // High-precision seed for sums; the first added term pulls the precision
    // down to its own honest value.
    return PadicNumber::zero(p, prec_a + prec_b);
}

void check_series_primes(long pa, long pb) {
    if (pa != pb)
        throw prime_mismatch("series live over p=" + std::to_string(pa) + " and p=" +
                             std::to_string(pb));
}

} // namespace

// ---------------------------------------------------------------------------
// Univariate
// ---------------------------------------------------------------------------

TruncatedSeries TruncatedSeries::zeros(long p, long prec, long D) {
    if (D < 0) throw error("series degree must be >= 0");
    return TruncatedSeries{p, prec, D,
                           std::vector<PadicNumber>(static_cast<size_t>(D + 1),
                                                    PadicNumber::zero(p, prec))};
}

TruncatedSeries TruncatedSeries::variable(long p, long prec, long D) {
    TruncatedSeries t = zeros(p, prec, D);
    if (D >= 1) t.set(1, PadicNumber::from_integer(1, p, prec));
    return t;
}

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    TruncatedSeries r = TruncatedSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i = 0; i <= D; ++i) r.set(i, a.at(i) + b.at(i));
    return r;
}

TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    TruncatedSeries r = TruncatedSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i = 0; i <= D; ++i) r.set(i, a.at(i) - b.at(i));
    return r;
}

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    TruncatedSeries r = TruncatedSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long n = 0; n <= D; ++n) {
        PadicNumber s = acc_zero(a.p, a.prec, b.prec);
        for (long i = 0; i <= n; ++i) s = s + a.at(i) * b.at(n - i);
        r.set(n, s);
    }
    return r;
}

TruncatedSeries ts_compose(const TruncatedSeries& u, const TruncatedSeries& v) {
    check_series_primes(u.p, v.p);
    if (!v.constant_term_zero())
        throw error("series composition requires a zero constant term");
    long D = std::min(u.D, v.D);
    TruncatedSeries r = TruncatedSeries::zeros(u.p, std::min(u.prec, v.prec), D);
    r.set(0, u.at(u.D <= D ? u.D : D));
    for (long i = (u.D <= D ? u.D : D) - 1; i >= 0; --i) {
        r = ts_mul(r, v);
        r.set(0, r.at(0) + u.at(i));
    }
    return r;
}

TruncatedSeries ts_derivative(const TruncatedSeries& a) {
    long D = std::max(a.D - 1, 0L);
    TruncatedSeries r = TruncatedSeries::zeros(a.p, a.prec, D);
    for (long n = 1; n <= a.D; ++n)
        r.set(n - 1, a.at(n) * PadicNumber::from_integer(n, a.p, a.prec));
    return r;
}

TruncatedSeries ts_integrate(const TruncatedSeries& a) {
    TruncatedSeries r = TruncatedSeries::zeros(a.p, a.prec, a.D + 1);
    for (long n = 1; n <= a.D + 1; ++n) {
        // n is known exactly, so give the divisor enough headroom that the
        // quotient loses only the unavoidable v_p(n) digits of absolute
        // precision.
        long slack = 2 * int_valuation(n, a.p);
        r.set(n, a.at(n - 1) / PadicNumber::from_integer(n, a.p, a.prec + slack));
    }
    return r;
}

TruncatedSeries ts_invert_unit(const TruncatedSeries& a) {
    if (a.at(0).is_zero() || a.at(0).valuation() != 0)
        throw not_a_unit("series inversion requires a unit constant term");
    TruncatedSeries r = TruncatedSeries::zeros(a.p, a.prec, a.D);
    PadicNumber c0inv = a.at(0).inverse();
    r.set(0, c0inv);
    for (long n = 1; n <= a.D; ++n) {
        PadicNumber s = acc_zero(a.p, a.prec, a.prec);
        for (long k = 1; k <= n; ++k) s = s + a.at(k) * r.at(n - k);
        r.set(n, -(c0inv * s));
    }
    return r;
}

TruncatedSeries ts_reversion(const TruncatedSeries& a) {
    if (!a.constant_term_zero())
        throw error("series reversion requires a zero constant term");
    if (a.D < 1 || a.at(1).is_zero() || a.at(1).valuation() != 0)
        throw not_a_unit("series reversion requires a unit linear coefficient");
    long D = a.D;
    TruncatedSeries e = TruncatedSeries::zeros(a.p, a.prec, D);
    e.set(1, a.at(1).inverse());
    for (long n = 2; n <= D; ++n) {
        // e o a == T mod T^n so far; the degree-n defect is killed by
        // e_n = (T - e o a)_n / a_1^n.
        TruncatedSeries t = ts_compose(e, a);
        PadicNumber defect = -t.at(n);
        e.set(n, defect / a.at(1).pow(static_cast<unsigned long>(n)));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

BivariateSeries BivariateSeries::zeros(long p, long prec, long D) {
    if (D < 0) throw error("series degree must be >= 0");
    BivariateSeries b{p, prec, D, {}};
    b.c.resize(static_cast<size_t>(D + 1));
    for (long i = 0; i <= D; ++i)
        b.c[static_cast<size_t>(i)].assign(static_cast<size_t>(D - i + 1),
                                           PadicNumber::zero(p, prec));
    return b;
}

BivariateSeries bs_add(const BivariateSeries& a, const BivariateSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    BivariateSeries r = BivariateSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i = 0; i <= D; ++i)
        for (long j = 0; i + j <= D; ++j) r.set(i, j, a.at(i, j) + b.at(i, j));
    return r;
}

BivariateSeries bs_mul(const BivariateSeries& a, const BivariateSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    BivariateSeries r = BivariateSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i = 0; i <= D; ++i) {
        for (long j = 0; i + j <= D; ++j) {
            PadicNumber s = acc_zero(a.p, a.prec, b.prec);
            for (long u = 0; u <= i; ++u)
                for (long v = 0; v <= j; ++v) {
                    if (u + v > a.D || (i - u) + (j - v) > b.D) continue;
                    s = s + a.at(u, v) * b.at(i - u, j - v);
                }
            r.set(i, j, s);
        }
    }
    return r;
}

BivariateSeries ts_compose_bivariate(const TruncatedSeries& u, const BivariateSeries& B) {
    check_series_primes(u.p, B.p);
    if (!B.at(0, 0).is_zero())
        throw error("series composition requires a zero constant term");
    long D = std::min(u.D, B.D);
    BivariateSeries r = BivariateSeries::zeros(u.p, std::min(u.prec, B.prec), D);
    long top = std::min(u.D, D);
    r.set(0, 0, u.at(top));
    for (long i = top - 1; i >= 0; --i) {
        r = bs_mul(r, B);
        r.set(0, 0, r.at(0, 0) + u.at(i));
    }
    return r;
}

BivariateSeries bs_substitute_pair(const BivariateSeries& B, const TruncatedSeries& u,
                                   const TruncatedSeries& v) {
    check_series_primes(B.p, u.p);
    check_series_primes(B.p, v.p);
    if (!u.constant_term_zero() || !v.constant_term_zero())
        throw error("substitution requires zero constant terms");
    long D = std::min({B.D, u.D, v.D});
    long prec = std::min({B.prec, u.prec, v.prec});
    // powers of u and v up to degree D
    std::vector<TruncatedSeries> up, vp;
    TruncatedSeries one = TruncatedSeries::zeros(B.p, prec, D);
    one.set(0, PadicNumber::from_integer(1, B.p, prec));
    up.push_back(one);
    vp.push_back(one);
    for (long k = 1; k <= D; ++k) {
        up.push_back(ts_mul(up.back(), u));
        vp.push_back(ts_mul(vp.back(), v));
    }
    BivariateSeries r = BivariateSeries::zeros(B.p, prec, D);
    for (long i = 0; i <= D; ++i) {
        for (long j = 0; i + j <= D; ++j) {
            if (i > B.D || j > B.D - i) continue;
            const PadicNumber& cij = B.at(i, j);
            for (long a = i; a <= D; ++a) {
                for (long b = j; a + b <= D; ++b) {
                    PadicNumber term = cij * up[static_cast<size_t>(i)].at(a) *
                                       vp[static_cast<size_t>(j)].at(b);
                    r.set(a, b, r.at(a, b) + term);
                }
            }
        }
    }
    return r;
}

TruncatedSeries bs_compose_two_univariate(const BivariateSeries& F, const TruncatedSeries& u,
                                          const TruncatedSeries& v) {
    check_series_primes(F.p, u.p);
    check_series_primes(F.p, v.p);
    if (!u.constant_term_zero() || !v.constant_term_zero())
        throw error("substitution requires zero constant terms");
    long D = std::min({F.D, u.D, v.D});
    long prec = std::min({F.prec, u.prec, v.prec});
    std::vector<TruncatedSeries> up, vp;
    TruncatedSeries one = TruncatedSeries::zeros(F.p, prec, D);
    one.set(0, PadicNumber::from_integer(1, F.p, prec));
    up.push_back(one);
    vp.push_back(one);
    for (long k = 1; k <= D; ++k) {
        up.push_back(ts_mul(up.back(), u));
        vp.push_back(ts_mul(vp.back(), v));
    }
    TruncatedSeries r = TruncatedSeries::zeros(F.p, prec, D);
    for (long i = 0; i <= F.D && i <= D; ++i)
        for (long j = 0; i + j <= F.D && j <= D; ++j) {
            TruncatedSeries t = ts_mul(up[static_cast<size_t>(i)], vp[static_cast<size_t>(j)]);
            for (long n = 0; n <= D; ++n) r.set(n, r.at(n) + F.at(i, j) * t.at(n));
        }
    return r;
}

BivariateSeries bs_embed_x(const TruncatedSeries& u, long D) {
    BivariateSeries r = BivariateSeries::zeros(u.p, u.prec, D);
    for (long i = 0; i <= std::min(u.D, D); ++i) r.set(i, 0, u.at(i));
    return r;
}

BivariateSeries bs_embed_y(const TruncatedSeries& u, long D) {
    BivariateSeries r = BivariateSeries::zeros(u.p, u.prec, D);
    for (long j = 0; j <= std::min(u.D, D); ++j) r.set(0, j, u.at(j));
    return r;
}

// ---------------------------------------------------------------------------
// Trivariate
// ---------------------------------------------------------------------------

TrivariateSeries TrivariateSeries::zeros(long p, long prec, long D) {
    if (D < 0) throw error("series degree must be >= 0");
    TrivariateSeries t{p, prec, D, {}};
    t.c.resize(static_cast<size_t>(D + 1));
    for (long i = 0; i <= D; ++i) {
        t.c[static_cast<size_t>(i)].resize(static_cast<size_t>(D - i + 1));
        for (long j = 0; i + j <= D; ++j)
            t.c[static_cast<size_t>(i)][static_cast<size_t>(j)].assign(
                static_cast<size_t>(D - i - j + 1), PadicNumber::zero(p, prec));
    }
    return t;
}

TrivariateSeries tv_add(const TrivariateSeries& a, const TrivariateSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    TrivariateSeries r = TrivariateSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i = 0; i <= D; ++i)
        for (long j = 0; i + j <= D; ++j)
            for (long k = 0; i + j + k <= D; ++k)
                r.set(i, j, k, a.at(i, j, k) + b.at(i, j, k));
    return r;
}

TrivariateSeries tv_mul(const TrivariateSeries& a, const TrivariateSeries& b) {
    check_series_primes(a.p, b.p);
    long D = std::min(a.D, b.D);
    TrivariateSeries r = TrivariateSeries::zeros(a.p, std::min(a.prec, b.prec), D);
    for (long i1 = 0; i1 <= a.D; ++i1)
        for (long j1 = 0; i1 + j1 <= a.D; ++j1)
            for (long k1 = 0; i1 + j1 + k1 <= a.D; ++k1) {
                if (i1 + j1 + k1 > D) continue;
                for (long i2 = 0; i1 + i2 <= D; ++i2)
                    for (long j2 = 0; i1 + i2 + j1 + j2 <= D; ++j2)
                        for (long k2 = 0; i1 + i2 + j1 + j2 + k1 + k2 <= D; ++k2) {
                            if (i2 + j2 + k2 > b.D) continue;
                            r.set(i1 + i2, j1 + j2, k1 + k2,
                                  r.at(i1 + i2, j1 + j2, k1 + k2) +
                                      a.at(i1, j1, k1) * b.at(i2, j2, k2));
                        }
            }
    return r;
}

TrivariateSeries tv_variable(long p, long prec, long D, int which) {
    TrivariateSeries t = TrivariateSeries::zeros(p, prec, D);
    if (D >= 1) {
        PadicNumber one = PadicNumber::from_integer(1, p, prec);
        if (which == 0) t.set(1, 0, 0, one);
        else if (which == 1) t.set(0, 1, 0, one);
        else if (which == 2) t.set(0, 0, 1, one);
        else throw error("tv_variable: which must be 0, 1 or 2");
    }
    return t;
}

TrivariateSeries tv_embed_xy(const BivariateSeries& F) {
    TrivariateSeries t = TrivariateSeries::zeros(F.p, F.prec, F.D);
    for (long i = 0; i <= F.D; ++i)
        for (long j = 0; i + j <= F.D; ++j) t.set(i, j, 0, F.at(i, j));
    return t;
}

TrivariateSeries tv_embed_yz(const BivariateSeries& F) {
    TrivariateSeries t = TrivariateSeries::zeros(F.p, F.prec, F.D);
    for (long i = 0; i <= F.D; ++i)
        for (long j = 0; i + j <= F.D; ++j) t.set(0, i, j, F.at(i, j));
    return t;
}

TrivariateSeries bs_compose_trivariate(const BivariateSeries& F, const TrivariateSeries& A,
                                       const TrivariateSeries& B) {
    check_series_primes(F.p, A.p);
    check_series_primes(F.p, B.p);
    if (!A.at(0, 0, 0).is_zero() || !B.at(0, 0, 0).is_zero())
        throw error("substitution requires zero constant terms");
    long D = std::min({F.D, A.D, B.D});
    long prec = std::min({F.prec, A.prec, B.prec});
    std::vector<TrivariateSeries> ap, bp;
    TrivariateSeries one = TrivariateSeries::zeros(F.p, prec, D);
    one.set(0, 0, 0, PadicNumber::from_integer(1, F.p, prec));
    ap.push_back(one);
    bp.push_back(one);
    for (long k = 1; k <= D; ++k) {
        ap.push_back(tv_mul(ap.back(), A));
        bp.push_back(tv_mul(bp.back(), B));
    }
    TrivariateSeries r = TrivariateSeries::zeros(F.p, prec, D);
    for (long i = 0; i <= F.D && i <= D; ++i)
        for (long j = 0; i + j <= F.D && j <= D; ++j) {
            TrivariateSeries t = tv_mul(ap[static_cast<size_t>(i)], bp[static_cast<size_t>(j)]);
            const PadicNumber& cij = F.at(i, j);
            for (long a = 0; a <= D; ++a)
                for (long b = 0; a + b <= D; ++b)
                    for (long c = 0; a + b + c <= D; ++c)
                        r.set(a, b, c, r.at(a, b, c) + cij * t.at(a, b, c));
        }
    return r;
}

// ---------------------------------------------------------------------------
// Formal group laws
// ---------------------------------------------------------------------------

BivariateSeries multiplicative_law(long p, long prec, long D) {
    BivariateSeries F = BivariateSeries::zeros(p, prec, D);
    PadicNumber one = PadicNumber::from_integer(1, p, prec);
    if (D >= 1) {
        F.set(1, 0, one);
        F.set(0, 1, one);
    }
    if (D >= 2) F.set(1, 1, one);
    return F;
}

BivariateSeries additive_law(long p, long prec, long D) {
    BivariateSeries F = BivariateSeries::zeros(p, prec, D);
    PadicNumber one = PadicNumber::from_integer(1, p, prec);
    if (D >= 1) {
        F.set(1, 0, one);
        F.set(0, 1, one);
    }
    return F;
}

AxiomReport verify_fgl_axioms(const BivariateSeries& F) {
    AxiomReport rep;
    if (F.D < 2) throw error("axiom check needs degree >= 2");

    rep.linear_part_ok = F.at(0, 0).is_zero() && F.at(1, 0).is_one() && F.at(0, 1).is_one();
    if (!rep.linear_part_ok)
        rep.violations.push_back("linear part: F != X + Y mod degree 2");

    rep.identity_ok = true;
    for (long i = 0; i <= F.D; ++i) {
        bool ok_x = (i == 1) ? F.at(i, 0).is_one() : F.at(i, 0).is_zero();
        bool ok_y = (i == 1) ? F.at(0, i).is_one() : F.at(0, i).is_zero();
        if (!ok_x) {
            rep.identity_ok = false;
            rep.violations.push_back("identity: coefficient of X^" + std::to_string(i) +
                                     " in F(X, 0)");
        }
        if (!ok_y) {
            rep.identity_ok = false;
            rep.violations.push_back("identity: coefficient of Y^" + std::to_string(i) +
                                     " in F(0, Y)");
        }
    }

    rep.commutative_ok = true;
    for (long i = 0; i <= F.D; ++i)
        for (long j = i + 1; i + j <= F.D; ++j)
            if (!PadicNumber::same_residue(F.at(i, j), F.at(j, i))) {
                rep.commutative_ok = false;
                rep.violations.push_back("commutativity: X^" + std::to_string(i) + " Y^" +
                                         std::to_string(j));
            }

    TrivariateSeries lhs =
        bs_compose_trivariate(F, tv_embed_xy(F), tv_variable(F.p, F.prec, F.D, 2));
    TrivariateSeries rhs =
        bs_compose_trivariate(F, tv_variable(F.p, F.prec, F.D, 0), tv_embed_yz(F));
    rep.associative_ok = true;
    for (long i = 0; i <= lhs.D; ++i)
        for (long j = 0; i + j <= lhs.D; ++j)
            for (long k = 0; i + j + k <= lhs.D; ++k)
                if (!PadicNumber::same_residue(lhs.at(i, j, k), rhs.at(i, j, k))) {
                    rep.associative_ok = false;
                    rep.violations.push_back("associativity: X^" + std::to_string(i) + " Y^" +
                                             std::to_string(j) + " Z^" + std::to_string(k));
                }
    return rep;
}

TruncatedSeries formal_inverse(const BivariateSeries& F) {
    TruncatedSeries var = TruncatedSeries::variable(F.p, F.prec, F.D);
    TruncatedSeries iota = TruncatedSeries::zeros(F.p, F.prec, F.D);
    if (F.D >= 1) iota.set(1, PadicNumber::from_integer(-1, F.p, F.prec));
    for (long n = 2; n <= F.D; ++n) {
        TruncatedSeries d = bs_compose_two_univariate(F, var, iota);
        iota.set(n, iota.at(n) - d.at(n));
    }
    return iota;
}

TruncatedSeries invariant_differential(const BivariateSeries& F) {
    // dF/dX at (0, T): the i = 1 row of coefficients.
    TruncatedSeries u = TruncatedSeries::zeros(F.p, F.prec, F.D - 1);
    for (long j = 0; j + 1 <= F.D; ++j) u.set(j, F.at(1, j));
    if (u.at(0).is_zero() || u.at(0).valuation() != 0)
        throw not_a_unit("invariant differential needs dF/dX(0,0) to be a unit");
    return ts_invert_unit(u);
}

TruncatedSeries formal_log(const BivariateSeries& F) {
    return ts_integrate(invariant_differential(F));
}

TruncatedSeries formal_exp(const TruncatedSeries& L) { return ts_reversion(L); }

bool is_homomorphism(const TruncatedSeries& h, const BivariateSeries& F,
                     const BivariateSeries& G) {
    BivariateSeries lhs = ts_compose_bivariate(h, F);
    BivariateSeries rhs = bs_substitute_pair(G, h, h);
    long D = std::min(lhs.D, rhs.D);
    for (long i = 0; i <= D; ++i)
        for (long j = 0; i + j <= D; ++j)
            if (!PadicNumber::same_residue(lhs.at(i, j), rhs.at(i, j))) return false;
    return true;
}

CycloElt fgl_add(const BivariateSeries& F, const CycloElt& alpha, const CycloElt& beta) {
    if (alpha.prime() != F.p || beta.prime() != F.p)
        throw prime_mismatch("formal sum: element prime differs from series prime");
    long va = valuation_pi(alpha), vb = valuation_pi(beta);
    if (va < 1 || vb < 1)
        throw outside_maximal_ideal("formal sum requires both points in the maximal ideal");
    long m = std::min(alpha.coeff_prec(), beta.coeff_prec());
    std::vector<CycloElt> ap{CycloElt::one(F.p, m)}, bp{CycloElt::one(F.p, m)};
    for (long k = 1; k <= F.D; ++k) {
        ap.push_back(ap.back() * alpha);
        bp.push_back(bp.back() * beta);
    }
    CycloElt acc = CycloElt::zero(F.p, m);
    for (long i = 0; i <= F.D; ++i)
        for (long j = 0; i + j <= F.D; ++j) {
            const PadicNumber& cij = F.at(i, j);
            acc = acc + (ap[static_cast<size_t>(i)] * bp[static_cast<size_t>(j)]).mul_scalar(cij);
        }
    return acc;
}

} // namespace cyclog
