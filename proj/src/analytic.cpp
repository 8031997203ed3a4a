#include "cyclog/analytic.hpp"

#include <algorithm>

namespace cyclog {

namespace {

long digit_sum(long n, long p) {
    long s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

long vp_long(long n, long p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

long log_term_val(long n, long p, long w) { return n * w - (p - 1) * vp_long(n, p); }

long exp_term_val(long n, long p, long w) { return n * w - (n - digit_sum(n, p)); }

} // namespace

TruncationBound truncation_bound(long p, long w, long N) {
    require_odd_prime(p);
    if (w < 1) throw outside_domain("truncation bound needs valuation >= 1");
    if (N < 1) throw error("truncation bound needs a positive target");
    long ceiling = N * p;
    long n_max = 1;
    for (long n = 2; n <= ceiling; ++n)
        if (log_term_val(n, p, w) < N) n_max = n;
    return TruncationBound{n_max, p, w, N};
}

long exp_truncation_n(long p, long w, long N) {
    require_odd_prime(p);
    if (w < 2) throw outside_domain("exponential cutoff needs valuation >= 2");
    if (N < 1) throw error("truncation bound needs a positive target");
    long ceiling = N * p;
    long n_max = 1;
    for (long n = 2; n <= ceiling; ++n)
        if (exp_term_val(n, p, w) < N) n_max = n;
    return n_max;
}

AnalyticResult log1p(const CycloElt& x, long target) {
    const long p = x.prime();
    const long m = x.coeff_prec();
    if (target < 1) throw error("log1p: target precision must be >= 1");
    if (x.is_zero())
        return AnalyticResult{x, PrecisionCert{target, std::min(target, x.pi_prec()), 0}};
    long w = valuation_pi(x);
    if (w < 1)
        throw outside_domain("log1p requires an argument in the maximal ideal (v_pi >= 1)");

    TruncationBound tb = truncation_bound(p, w, target);
    long K = 0;
    for (long q = p; q <= tb.n_max; q *= p) ++K;
    if (m - K < 1)
        throw precision_exhausted("log1p would spend all " + std::to_string(m) +
                                  " coefficient digits on p-power divisions");
    long achieved = std::min(target, (p - 1) * (m - K));

    // Group terms by v_p(n); each group stays inside O_K and its p-power is
    // divided out once, exactly.
    std::vector<CycloElt> groups(static_cast<size_t>(K + 1), CycloElt::zero(p, m));
    CycloElt xp = CycloElt::one(p, m);
    for (long n = 1; n <= tb.n_max; ++n) {
        xp = xp * x;
        long k = vp_long(n, p);
        long unit = n;
        for (long t = 0; t < k; ++t) unit /= p;
        mpz_class num = (n % 2 == 1) ? 1 : -1;
        PadicNumber coeff = PadicNumber::from_rational(num, unit, p, m);
        groups[static_cast<size_t>(k)] = groups[static_cast<size_t>(k)] + xp.mul_scalar(coeff);
    }
    CycloElt acc = groups[0].at_coeff_prec(m - K);
    for (long k = 1; k <= K; ++k)
        acc = acc + groups[static_cast<size_t>(k)].div_exact_p(k);
    return AnalyticResult{acc, PrecisionCert{target, achieved, tb.n_max}};
}

AnalyticResult exp_map(const CycloElt& x, long target) {
    const long p = x.prime();
    const long m = x.coeff_prec();
    if (target < 1) throw error("exp_map: target precision must be >= 1");
    if (x.is_zero())
        return AnalyticResult{CycloElt::one(p, m),
                              PrecisionCert{target, std::min(target, x.pi_prec()), 0}};
    long w = valuation_pi(x);
    if (w < 2)
        throw outside_domain("exp requires v_pi >= 2; valuation " + std::to_string(w) +
                             " lies outside the convergence domain");

    long n_max = exp_truncation_n(p, w, target);
    long loss = (n_max - digit_sum(n_max, p)) / (p - 1); // v_p(n_max!)
    if (m - loss < 1)
        throw precision_exhausted("exp would spend all " + std::to_string(m) +
                                  " coefficient digits on factorial divisions");
    long achieved = std::min(target, (p - 1) * (m - loss));

    CycloElt acc = CycloElt::one(p, m - loss);
    CycloElt xp = CycloElt::one(p, m);
    mpz_class fact = 1;
    for (long n = 1; n <= n_max; ++n) {
        xp = xp * x;
        fact *= n;
        long e = int_valuation(fact, p);
        mpz_class unit;
        mpz_divexact(unit.get_mpz_t(), fact.get_mpz_t(), pow_p(p, e).get_mpz_t());
        CycloElt term =
            xp.mul_scalar(PadicNumber::from_rational(1, unit, p, m)).div_exact_p(e);
        acc = acc + term;
    }
    return AnalyticResult{acc, PrecisionCert{target, achieved, n_max}};
}

bool isometry_check(const CycloElt& x) {
    long w = valuation_pi(x);
    if (x.is_zero() || w < 2)
        throw outside_domain("isometry statement applies to v_pi >= 2");
    AnalyticResult r = log1p(x, w + 1);
    if (r.cert.achieved < w + 1)
        throw precision_exhausted("cannot certify the valuation of the logarithm");
    return valuation_pi(r.value) == w;
}

long best_exp_target(long p, long w, long cprec) {
    long best_target = 2, best_achieved = 0;
    for (long t = 2; t <= (p - 1) * cprec; ++t) {
        long n_max = exp_truncation_n(p, w, t);
        long loss = (n_max - digit_sum(n_max, p)) / (p - 1);
        if (cprec - loss < 1) continue;
        long achieved = std::min(t, (p - 1) * (cprec - loss));
        if (achieved > best_achieved) {
            best_achieved = achieved;
            best_target = t;
        }
    }
    return best_target;
}

long best_log_target(long p, long w, long cprec) {
    long best_target = 1, best_achieved = 0;
    for (long t = 1; t <= (p - 1) * cprec; ++t) {
        TruncationBound tb = truncation_bound(p, w, t);
        long K = 0;
        for (long q = p; q <= tb.n_max; q *= p) ++K;
        if (cprec - K < 1) continue;
        long achieved = std::min(t, (p - 1) * (cprec - K));
        if (achieved > best_achieved) {
            best_achieved = achieved;
            best_target = t;
        }
    }
    return best_target;
}

} // namespace cyclog
