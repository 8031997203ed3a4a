#pragma once

#include <string>
#include <vector>

#include "cyclog/cyclo.hpp"
#include "cyclog/padic.hpp"

namespace cyclog {

// Truncated power series over Z_p (coefficients carried as p-adic numbers at
// finite precision), indexed 0..D.  The truncation degree D is part of the
// value; all operations truncate at the smaller operand degree.
struct TruncatedSeries {
    long p;
    long prec;
    long D;
    std::vector<PadicNumber> c;

    static TruncatedSeries zeros(long p, long prec, long D);
    // The series T (identity at the origin).
    static TruncatedSeries variable(long p, long prec, long D);

    const PadicNumber& at(long i) const { return c.at(static_cast<size_t>(i)); }
    void set(long i, const PadicNumber& v) { c.at(static_cast<size_t>(i)) = v; }
    bool constant_term_zero() const { return c[0].is_zero(); }
};

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);
// u(v(T)); requires v(0) = 0.
TruncatedSeries ts_compose(const TruncatedSeries& u, const TruncatedSeries& v);
TruncatedSeries ts_derivative(const TruncatedSeries& a);
// Termwise antiderivative with zero constant term; divides by n and may
// throw precision_exhausted at indices divisible by p when the coefficient
// precision cannot absorb the loss.
TruncatedSeries ts_integrate(const TruncatedSeries& a);
// Multiplicative inverse; requires a(0) to be a unit.
TruncatedSeries ts_invert_unit(const TruncatedSeries& a);
// Compositional inverse: r(a(T)) = T = a(r(T)); requires a(0) = 0 and a'(0)
// a unit.
TruncatedSeries ts_reversion(const TruncatedSeries& a);

// Bivariate truncated series: coefficients c[i][j] for i + j <= D.
struct BivariateSeries {
    long p;
    long prec;
    long D;
    std::vector<std::vector<PadicNumber>> c;

    static BivariateSeries zeros(long p, long prec, long D);

    const PadicNumber& at(long i, long j) const {
        return c.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
    }
    void set(long i, long j, const PadicNumber& v) {
        c.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)) = v;
    }
};

BivariateSeries bs_add(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries bs_mul(const BivariateSeries& a, const BivariateSeries& b);
// u(B(X,Y)) for univariate u and bivariate B with B(0,0) = 0.
BivariateSeries ts_compose_bivariate(const TruncatedSeries& u, const BivariateSeries& B);
// B(u(X), v(Y)) for univariates u, v with zero constant term.
BivariateSeries bs_substitute_pair(const BivariateSeries& B, const TruncatedSeries& u,
                                   const TruncatedSeries& v);

// Trivariate truncated series: coefficients c[i][j][k] for i + j + k <= D.
struct TrivariateSeries {
    long p;
    long prec;
    long D;
    std::vector<std::vector<std::vector<PadicNumber>>> c;

    static TrivariateSeries zeros(long p, long prec, long D);

    const PadicNumber& at(long i, long j, long k) const {
        return c.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)).at(static_cast<size_t>(k));
    }
    void set(long i, long j, long k, const PadicNumber& v) {
        c.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)).at(static_cast<size_t>(k)) = v;
    }
};

TrivariateSeries tv_add(const TrivariateSeries& a, const TrivariateSeries& b);
TrivariateSeries tv_mul(const TrivariateSeries& a, const TrivariateSeries& b);
// The three coordinate variables as trivariate series (which = 0, 1, 2).
TrivariateSeries tv_variable(long p, long prec, long D, int which);
// F(X,Y) viewed inside the trivariate ring, in the (X,Y) or (Y,Z) slots.
TrivariateSeries tv_embed_xy(const BivariateSeries& F);
TrivariateSeries tv_embed_yz(const BivariateSeries& F);
// F(A, B) for bivariate F and trivariate arguments with zero constant term.
TrivariateSeries bs_compose_trivariate(const BivariateSeries& F, const TrivariateSeries& A,
                                       const TrivariateSeries& B);
// F(u(T), v(T)) collapsed to a single variable; u(0) = v(0) = 0.
TruncatedSeries bs_compose_two_univariate(const BivariateSeries& F, const TruncatedSeries& u,
                                          const TruncatedSeries& v);
// A univariate series viewed as a bivariate one in X only / in Y only.
BivariateSeries bs_embed_x(const TruncatedSeries& u, long D);
BivariateSeries bs_embed_y(const TruncatedSeries& u, long D);

// One commutative formal group law axiom report.  `violations` lists the
// offending monomials in human-readable form.
struct AxiomReport {
    bool linear_part_ok = false;
    bool identity_ok = false;
    bool commutative_ok = false;
    bool associative_ok = false;
    std::vector<std::string> violations;

    bool pass() const {
        return linear_part_ok && identity_ok && commutative_ok && associative_ok;
    }
};

// The multiplicative formal group law M(X,Y) = X + Y + XY as a truncated
// bivariate series over Z_p.
BivariateSeries multiplicative_law(long p, long prec, long D);

// The additive law X + Y (target of the formal logarithm).
BivariateSeries additive_law(long p, long prec, long D);

// Checks F == X + Y mod degree 2, F(X,0) = X, F(0,Y) = Y, symmetry and
// associativity, all as identities of truncated series (coefficientwise at
// the shared precision).
AxiomReport verify_fgl_axioms(const BivariateSeries& F);

// The formal inverse iota(T) with F(T, iota(T)) = 0 mod T^(D+1).
TruncatedSeries formal_inverse(const BivariateSeries& F);

// Normalized invariant differential density rho(T) = 1 / (dF/dX)(0, T),
// with rho(0) = 1.
TruncatedSeries invariant_differential(const BivariateSeries& F);

// Formal logarithm L(T) = integral of rho, L(T) = T + O(T^2); coefficient
// denominators appear at indices divisible by p.
TruncatedSeries formal_log(const BivariateSeries& F);

// Formal exponential: the compositional inverse of L.
TruncatedSeries formal_exp(const TruncatedSeries& L);

// True when h(F(X,Y)) == G(h(X), h(Y)) coefficientwise mod degree D+1.
bool is_homomorphism(const TruncatedSeries& h, const BivariateSeries& F,
                     const BivariateSeries& G);

// Evaluates the truncated law at points of the maximal ideal; the result is
// certified modulo pi^(D+1) (exact for polynomial laws such as the
// multiplicative one).  Throws outside_maximal_ideal unless both arguments
// have v_pi >= 1.
CycloElt fgl_add(const BivariateSeries& F, const CycloElt& alpha, const CycloElt& beta);

} // namespace cyclog
