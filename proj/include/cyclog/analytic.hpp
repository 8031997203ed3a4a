#pragma once

#include "cyclog/cyclo.hpp"

namespace cyclog {

// Minimal summation cutoff for the logarithm series on inputs of valuation
// w: the smallest n_max >= 1 such that every dropped term satisfies
//
//     v_pi(x^n / n) = n*w - (p-1)*v_p(n) >= N   for all n > n_max.
//
// Found by exact scan; for n >= max(2N, N + p - 1) the bound holds
// unconditionally (v_p(n) = k forces n >= p^k and (p-1)k <= n/2 for k >= 2),
// so the scan window [1, N*p] is provably sufficient.
struct TruncationBound {
    long n_max;
    long p;
    long w;
    long N;
};

TruncationBound truncation_bound(long p, long w, long N);

// Minimal cutoff for the exponential series on inputs of valuation w >= 2:
// smallest n_max >= 1 with n*w - (p-1)*v_p(n!) >= N for all n > n_max, where
// (p-1)*v_p(n!) = n - s_p(n).
long exp_truncation_n(long p, long w, long N);

// Certified precision attached to every analytic evaluation: the value is
// correct modulo pi^achieved; achieved = min(requested, storage precision
// after the divisions the summation performs).
struct PrecisionCert {
    long requested;
    long achieved;
    long n_max;
};

struct AnalyticResult {
    CycloElt value;
    PrecisionCert cert;
};

// log(1 + x) = sum_{n>=1} (-1)^(n-1) x^n / n for v_pi(x) >= 1.  Terms are
// grouped by v_p(n); each group is summed inside O_K and divided by its
// common p-power once, exactly, so the only precision ever lost is the
// unavoidable K = floor(log_p n_max) coefficient digits.  Throws
// outside_domain when x is not in the maximal ideal.
AnalyticResult log1p(const CycloElt& x, long target);

// exp(x) = sum_{n>=0} x^n / n! for v_pi(x) >= 2 (strictly: valuation 1 and
// below is outside the convergence domain and is rejected).  Division by n!
// splits into an exact p-power division and a unit scalar.
AnalyticResult exp_map(const CycloElt& x, long target);

// Certifies v_pi(log(1+x)) == v_pi(x) for v_pi(x) >= 2 by evaluating the
// logarithm one digit past the valuation.
bool isometry_check(const CycloElt& x);

// The request that maximizes the achieved precision of exp_map on inputs of
// valuation w at coefficient precision cprec (requesting deeper tails costs
// factorial divisions, so more is not always better).
long best_exp_target(long p, long w, long cprec);

// Same for log1p on inputs of valuation w.
long best_log_target(long p, long w, long cprec);

} // namespace cyclog
