#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cyclog/errors.hpp"

namespace cyclog {

// Returns true when p is an odd prime (>= 3).  Deterministic trial division;
// the primes used here are tiny.
bool is_odd_prime(long p);

// Throws unsupported_prime unless p is an odd prime.
void require_odd_prime(long p);

// p^k as an exact integer (k >= 0).
mpz_class pow_p(long p, long k);

// v_p(n) for a nonzero integer.
long int_valuation(const mpz_class& n, long p);

// Inverse of a modulo m (m > 1), throwing not_a_unit when gcd(a, m) != 1.
mpz_class inv_mod(const mpz_class& a, const mpz_class& m);

// The canonical set {0, 1, ..., p-1} of residue representatives used for
// every digit in this library.
class ResidueSet {
public:
    explicit ResidueSet(long p);

    long prime() const { return p_; }
    long size() const { return p_; }
    bool contains(long r) const { return r >= 0 && r < p_; }

    // Representative of x modulo p, always in [0, p).
    long reduce(const mpz_class& x) const;

private:
    long p_;
};

// A p-adic number carried at finite absolute precision: the value is known
// modulo p^prec and stored in the canonical form
//
//     value = unit * p^val   with  unit in [1, p^(prec-val)),  p coprime to unit,
//
// or as the flagged zero state "0 + O(p^prec)".  Two numbers representing the
// same residue at the same precision compare equal bit for bit.  Operations
// propagate precision pessimistically:
//
//     a + b : prec = min(Na, Nb)
//     a * b : prec = min(Na + v(b), Nb + v(a))
//     a / b : prec = min(Na - v(b), Nb + v(a) - 2 v(b)), v = v(a) - v(b)
//
// and throw precision_exhausted whenever no digit of the result is known.
class PadicNumber {
public:
    static PadicNumber zero(long p, long prec);
    static PadicNumber from_integer(const mpz_class& n, long p, long prec);
    static PadicNumber from_integer(long n, long p, long prec);
    static PadicNumber from_rational(const mpz_class& num, const mpz_class& den,
                                     long p, long prec);
    // Builds unit * p^val from already-split parts; normalizes.
    static PadicNumber from_parts(long p, long prec, long val, const mpz_class& unit);
    // Builds (scaled * p^scale) where scaled is an integer known modulo
    // p^(prec - scale); the workhorse normalizer behind all arithmetic.
    static PadicNumber from_scaled(long p, long prec, long scale, const mpz_class& scaled);

    long prime() const { return p_; }
    long precision() const { return prec_; }
    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && val_ == 0 && unit_ == 1; }

    // Valuation of a nonzero element; undefined (throws) for the zero state.
    long valuation() const;

    // Unit part of a nonzero element, canonical in [1, p^(prec - val)).
    const mpz_class& unit_part() const;

    // The residue of the value modulo p^k (0 < k <= prec - max(val, 0)''
    // worth of known digits); requires val >= 0.
    mpz_class residue_mod(long k) const;

    // True when the two operands agree modulo p^min(Na, Nb).
    static bool same_residue(const PadicNumber& a, const PadicNumber& b);

    // Returns the same value viewed at a lower precision.
    PadicNumber at_precision(long prec) const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);

    PadicNumber pow(unsigned long e) const;
    PadicNumber inverse() const;

    friend bool operator==(const PadicNumber& a, const PadicNumber& b);
    friend bool operator!=(const PadicNumber& a, const PadicNumber& b) { return !(a == b); }

    // "p^v * u + O(p^N)" / "O(p^N)"; used by error messages and the table
    // printers.
    std::string to_string() const;

private:
    PadicNumber(long p, long prec, long val, mpz_class unit, bool zero);

    static void check_compatible(const PadicNumber& a, const PadicNumber& b);

    long p_;
    long prec_;      // absolute precision, >= 1
    long val_;       // valuation; equals prec_ in the zero state
    mpz_class unit_; // canonical unit part; 0 in the zero state
    bool zero_;
};

// Teichmueller representative of a modulo p^prec: the unique (p-1)-st root of
// unity congruent to a mod p, computed as the fixed point of x -> x^p.
// Throws invalid_residue when a is divisible by p.
PadicNumber teichmuller(long a, long p, long prec);

} // namespace cyclog
