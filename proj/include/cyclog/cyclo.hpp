#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cyclog/padic.hpp"

namespace cyclog {

// Minimal polynomial of pi = zeta_p - 1 over Z_p:
//
//     E(X) = ((X+1)^p - 1) / X = sum_{i=0}^{p-1} binom(p, i+1) X^i,
//
// monic of degree p-1, Eisenstein at p (every non-leading coefficient is
// divisible by p, the constant term is exactly p).
class EisensteinPoly {
public:
    explicit EisensteinPoly(long p);

    long prime() const { return p_; }
    long degree() const { return p_ - 1; }
    // Full coefficient list a_0..a_{p-1} (a_{p-1} = 1), a_i = binom(p, i+1).
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

private:
    long p_;
    std::vector<mpz_class> coeffs_;
};

// True when `coeffs` (constant term first, leading coefficient last) is
// monic and Eisenstein at p: v_p(a_i) >= 1 for i < deg and v_p(a_0) == 1.
bool eisenstein_check(const std::vector<mpz_class>& coeffs, long p);

// Sentinel returned by valuation_pi for the exact-zero element.
inline constexpr long kPiValuationInfinity = std::numeric_limits<long>::max();

// A pi-adic digit expansion  x = sum_i digits[i] * pi^(n0 + i)  with every
// digit in the canonical set {0,...,p-1} and digits[0] != 0 unless the
// element is exact zero (represented as n0 = 0 and all-zero digits).
struct DigitExpansion {
    long n0 = 0;
    std::vector<long> digits;

    friend bool operator==(const DigitExpansion& a, const DigitExpansion& b) {
        return a.n0 == b.n0 && a.digits == b.digits;
    }
};

// An element of O_K = Z_p[zeta_p] for K = Q_p(zeta_p), stored as the
// coefficient vector (c_0, ..., c_{p-2}) in the power basis of pi = zeta_p-1:
//
//     x = c_0 + c_1 pi + ... + c_{p-2} pi^(p-2),
//
// with every coefficient a canonical residue in [0, p^M) for one shared
// coefficient precision M ("x is known modulo p^M O_K", i.e. modulo
// pi^((p-1)M)).  Elements are immutable values; all operations return new
// elements and reduce coefficients canonically, so equal cosets at equal
// precision are bit-for-bit equal — in particular an element whose residues
// all vanish IS the exact-zero element at that precision.
class CycloElt {
public:
    CycloElt(long p, long cprec, std::vector<mpz_class> coords);

    static CycloElt zero(long p, long cprec);
    static CycloElt one(long p, long cprec);
    // pi = zeta_p - 1, the canonical uniformizer.
    static CycloElt pi(long p, long cprec);
    // zeta_p = 1 + pi.
    static CycloElt zeta(long p, long cprec);
    static CycloElt from_integer(const mpz_class& n, long p, long cprec);
    // Embeds a scalar with val >= 0; the result precision is
    // min(cprec, scalar precision).
    static CycloElt from_scalar(const PadicNumber& s, long cprec);

    long prime() const { return p_; }
    long coeff_prec() const { return cprec_; }
    // Number of certified pi-adic digit positions: (p-1) * coeff_prec.
    long pi_prec() const { return (p_ - 1) * cprec_; }
    bool is_zero() const;
    bool is_one() const;

    const std::vector<mpz_class>& coords() const { return c_; }
    const mpz_class& coord(long j) const { return c_.at(static_cast<size_t>(j)); }
    // Coordinate j viewed as a p-adic number at the coefficient precision.
    PadicNumber coefficient(long j) const;

    // Same element viewed at a lower coefficient precision.
    CycloElt at_coeff_prec(long cprec) const;

    CycloElt operator-() const;
    friend CycloElt operator+(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator-(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator*(const CycloElt& a, const CycloElt& b);

    CycloElt mul_small(long k) const;
    CycloElt mul_scalar(const PadicNumber& s) const;
    CycloElt pow(unsigned long e) const;

    // Exact division by p^k; throws not_divisible when a coefficient is not
    // divisible, precision_exhausted when no coefficient digit would remain.
    // Costs exactly k units of coefficient precision.
    CycloElt div_exact_p(long k) const;

    friend bool operator==(const CycloElt& a, const CycloElt& b);
    friend bool operator!=(const CycloElt& a, const CycloElt& b) { return !(a == b); }

    std::string to_string() const;

private:
    long p_;
    long cprec_;
    std::vector<mpz_class> c_;
};

// pi-adic valuation of x.  Exact (no digit search): the basis terms c_j pi^j
// have pairwise distinct valuations modulo p-1, so
//     v_pi(x) = min_j ( j + (p-1) * v_p(c_j) )
// over the nonzero canonical coefficients.  Returns kPiValuationInfinity for
// the exact-zero element (and never a value >= pi_prec otherwise).
long valuation_pi(const CycloElt& x);

// First `count` pi-adic digits of x starting at n0 = v_pi(x), extracted by
// exact integer arithmetic (no precision is lost: digits below position
// (p-1)*coeff_prec are exact).  Requires n0 + count <= pi_prec(), else
// precision_exhausted.  Exact zero yields n0 = 0 and all-zero digits.
DigitExpansion pi_adic_digits(const CycloElt& x, long count);

// Reassembles an element from a digit expansion (digits validated against
// the canonical set).
CycloElt from_digits(long p, long cprec, const DigitExpansion& d);

// Field norm N_{K/Q_p}(x): determinant of multiplication by x on the power
// basis, computed fraction-free over the integers and reduced to a scalar at
// the coefficient precision.
PadicNumber norm_to_qp(const CycloElt& x);

// Inverse of a unit (v_pi(x) = 0) by Newton iteration y <- y(2 - xy); exact
// at the stored precision.  Throws not_a_unit otherwise.
CycloElt cyclo_inv(const CycloElt& x);

// Exact division a / b where v_pi(a) >= v_pi(b); throws not_divisible
// otherwise and division_by_zero when b is exact zero.  Costs
// ceil(v_pi(b) / (p-1)) units of coefficient precision when v_pi(b) > 0 and
// nothing when b is a unit.
CycloElt div_exact(const CycloElt& a, const CycloElt& b);

// Exact division by pi^k (k >= 0); same cost model as div_exact.
CycloElt div_exact_pi(const CycloElt& a, long k);

// The unit w = -pi^(1-p) * p = sum_{i=0}^{p-2} (binom(p,i+1)/p) pi^i, which
// satisfies pi^(p-1) = -p * w exactly and w == 1 mod pi.
CycloElt eisenstein_unit(long p, long cprec);

// The distinguished (p-1)-st root of -p:  pi2 = u * pi with u == 1 mod pi
// solving u^(p-1) = w^(-1).  Satisfies, exactly at the stored precision,
//
//     pi2^(p-1) + p = 0,      pi2 + pi2^p / p = 0,      v_pi(pi2) = 1.
//
// Every residue 1..p-1 seeds a branch (the p-1 branches differ by the
// (p-1)-st roots of unity and all satisfy the same equations; their product
// over all branches has unit part -1); this function pins the branch with
// u == 1 mod pi.  Throws lift_failure on any internal-consistency violation.
CycloElt neg_p_root(long p, long cprec);

// Deterministic, reproducible random elements.
enum class RandomShape {
    unit,     // v_pi = 0: uniform digits with nonzero leading digit
    in_m_pow, // element of m^k: uniform digits from position k on
    annulus,  // a principal unit u with v_pi(u - 1) = 1 exactly
};

// splitmix64 stream; value streams are derived per (seed, index) so that
// parallel consumers can draw independent, order-free samples.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next();
    // Uniform value in [0, bound) by rejection (no modulo bias).
    uint64_t below(uint64_t bound);
};

CycloElt random_element(long p, long cprec, RandomShape shape, long k, uint64_t seed);

} // namespace cyclog
