#pragma once

#include "cyclog/cyclo.hpp"

namespace cyclog {

// Serial reference evaluations of the two power series, written straight
// from the definitions: dense integer coefficient vectors reduced modulo
// (E_p(X), p^(m + headroom)), summed one term at a time with an exact
// p-power division per term.  No grouping, no shared code with the
// production summation kernels in analytic.cpp.  The verification harness
// re-checks every logarithm/exponential it reports through this path, and
// the benchmark tool uses it as the single-threaded baseline.
//
// The result carries the full input coefficient precision: the headroom
// modulus absorbs the per-term divisions, so the reference loses nothing.
CycloElt naive_log1p(const CycloElt& x, long n_max);

// Reference exponential sum_{n=0}^{n_max} x^n / n!; requires v_pi(x) >= 2.
CycloElt naive_exp(const CycloElt& x, long n_max);

// True when a and b agree modulo pi^digits, capped at the precision the
// difference actually carries.
bool naive_matches(const CycloElt& a, const CycloElt& b, long digits);

} // namespace cyclog
