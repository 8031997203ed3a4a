#include "cyclog/padic.hpp"

#include <sstream>

namespace cyclog {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_odd_prime(long p) {
    if (!is_odd_prime(p))
        throw unsupported_prime("prime must be an odd prime >= 3, got " + std::to_string(p));
}

mpz_class pow_p(long p, long k) {
    if (k < 0) throw error("pow_p: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k));
    return r;
}

long int_valuation(const mpz_class& n, long p) {
    if (n == 0) throw error("int_valuation: zero has no finite valuation");
    mpz_class q = n, r;
    long v = 0;
    while (true) {
        mpz_class quo;
        r = q % p;
        if (r != 0) break;
        mpz_divexact_ui(quo.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        q = quo;
        ++v;
    }
    return v;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw not_a_unit("element is not invertible modulo " + m.get_str());
    return r;
}

ResidueSet::ResidueSet(long p) : p_(p) { require_odd_prime(p); }

long ResidueSet::reduce(const mpz_class& x) const {
    mpz_class r = x % p_;
    if (r < 0) r += p_;
    return r.get_si();
}

// ---------------------------------------------------------------------------
// PadicNumber
// ---------------------------------------------------------------------------

PadicNumber::PadicNumber(long p, long prec, long val, mpz_class unit, bool zero)
    : p_(p), prec_(prec), val_(val), unit_(std::move(unit)), zero_(zero) {}

PadicNumber PadicNumber::zero(long p, long prec) {
    require_odd_prime(p);
    if (prec < 1) throw precision_exhausted("zero: precision must be >= 1");
    return PadicNumber(p, prec, prec, 0, true);
}

PadicNumber PadicNumber::from_scaled(long p, long prec, long scale, const mpz_class& scaled) {
    require_odd_prime(p);
    if (prec < 1)
        throw precision_exhausted("result precision dropped to " + std::to_string(prec));
    long k = prec - scale; // scaled is known modulo p^k
    if (k <= 0) {
        // The whole contribution sits at or above the precision horizon.
        return zero(p, prec);
    }
    mpz_class m = pow_p(p, k);
    mpz_class v = scaled % m;
    if (v < 0) v += m;
    if (v == 0) return zero(p, prec);
    long w = int_valuation(v, p);
    long val = scale + w;
    if (val >= prec) return zero(p, prec);
    mpz_class unit;
    mpz_divexact(unit.get_mpz_t(), v.get_mpz_t(), pow_p(p, w).get_mpz_t());
    unit %= pow_p(p, prec - val);
    return PadicNumber(p, prec, val, std::move(unit), false);
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, long p, long prec) {
    return from_scaled(p, prec, 0, n);
}

PadicNumber PadicNumber::from_integer(long n, long p, long prec) {
    return from_scaled(p, prec, 0, mpz_class(n));
}

PadicNumber PadicNumber::from_rational(const mpz_class& num, const mpz_class& den,
                                       long p, long prec) {
    require_odd_prime(p);
    if (den == 0) throw division_by_zero("from_rational: zero denominator");
    if (num == 0) return zero(p, prec);
    long vn = int_valuation(num, p);
    long vd = int_valuation(den, p);
    long val = vn - vd;
    mpz_class nu, du;
    mpz_divexact(nu.get_mpz_t(), num.get_mpz_t(), pow_p(p, vn).get_mpz_t());
    mpz_divexact(du.get_mpz_t(), den.get_mpz_t(), pow_p(p, vd).get_mpz_t());
    if (val >= prec) return zero(p, prec);
    mpz_class m = pow_p(p, prec - val);
    mpz_class unit = (nu % m) * inv_mod(du, m) % m;
    if (unit < 0) unit += m;
    return from_scaled(p, prec, val, unit);
}

PadicNumber PadicNumber::from_parts(long p, long prec, long val, const mpz_class& unit) {
    return from_scaled(p, prec, val, unit);
}

long PadicNumber::valuation() const {
    if (zero_)
        throw error("valuation undefined for zero at precision " + std::to_string(prec_));
    return val_;
}

const mpz_class& PadicNumber::unit_part() const {
    if (zero_) throw error("unit part undefined for zero at precision " + std::to_string(prec_));
    return unit_;
}

mpz_class PadicNumber::residue_mod(long k) const {
    if (k < 1 || k > prec_)
        throw error("residue_mod: k out of range");
    if (zero_) return 0;
    if (val_ < 0) throw not_divisible("residue_mod: element has negative valuation");
    mpz_class r = unit_ * pow_p(p_, val_);
    return r % pow_p(p_, k);
}

bool PadicNumber::same_residue(const PadicNumber& a, const PadicNumber& b) {
    check_compatible(a, b);
    long n = std::min(a.prec_, b.prec_);
    PadicNumber x = a.at_precision(n), y = b.at_precision(n);
    return x == y;
}

PadicNumber PadicNumber::at_precision(long prec) const {
    if (prec > prec_) throw error("at_precision: cannot raise precision");
    if (prec == prec_) return *this;
    if (zero_) return zero(p_, prec);
    return from_scaled(p_, prec, val_, unit_);
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    mpz_class m = pow_p(p_, prec_ - val_);
    return PadicNumber(p_, prec_, val_, m - unit_, false);
}

void PadicNumber::check_compatible(const PadicNumber& a, const PadicNumber& b) {
    if (a.p_ != b.p_)
        throw prime_mismatch("operands live over p=" + std::to_string(a.p_) +
                             " and p=" + std::to_string(b.p_));
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    PadicNumber::check_compatible(a, b);
    long n = std::min(a.prec_, b.prec_);
    if (a.zero_ && b.zero_) return PadicNumber::zero(a.p_, n);
    long m = std::min(a.zero_ ? b.val_ : a.val_, b.zero_ ? a.val_ : b.val_);
    m = std::min(m, n); // never scale past the precision horizon
    mpz_class s = 0;
    if (!a.zero_) s += a.unit_ * pow_p(a.p_, a.val_ - m);
    if (!b.zero_) s += b.unit_ * pow_p(a.p_, b.val_ - m);
    return PadicNumber::from_scaled(a.p_, n, m, s);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    PadicNumber::check_compatible(a, b);
    // val_ of the zero state equals its precision, which makes the precision
    // formula below exact for every operand mix.
    long n = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
    if (a.zero_ || b.zero_) {
        if (n < 1) throw precision_exhausted("product precision dropped to " + std::to_string(n));
        return PadicNumber::zero(a.p_, n);
    }
    long val = a.val_ + b.val_;
    return PadicNumber::from_scaled(a.p_, n, val, a.unit_ * b.unit_);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    PadicNumber::check_compatible(a, b);
    if (b.zero_)
        throw division_by_zero("division by zero at precision " + std::to_string(b.prec_));
    long n = std::min(a.prec_ - b.val_, b.prec_ + a.val_ - 2 * b.val_);
    if (n < 1) throw precision_exhausted("quotient precision dropped to " + std::to_string(n));
    if (a.zero_) return PadicNumber::zero(a.p_, n);
    long val = a.val_ - b.val_;
    long k = n - val; // = min(Na - va, Nb - vb) >= 1
    mpz_class m = pow_p(a.p_, k);
    mpz_class q = (a.unit_ % m) * inv_mod(b.unit_ % m, m) % m;
    return PadicNumber::from_scaled(a.p_, n, val, q);
}

PadicNumber PadicNumber::pow(unsigned long e) const {
    PadicNumber acc = from_integer(1, p_, prec_);
    PadicNumber base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

PadicNumber PadicNumber::inverse() const {
    return from_integer(1, p_, prec_) / *this;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.prec_ == b.prec_ && a.zero_ == b.zero_ &&
           a.val_ == b.val_ && a.unit_ == b.unit_;
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << prec_ << ")";
    } else {
        os << unit_.get_str();
        if (val_ != 0) os << "*" << p_ << "^" << val_;
        os << " + O(" << p_ << "^" << prec_ << ")";
    }
    return os.str();
}

PadicNumber teichmuller(long a, long p, long prec) {
    require_odd_prime(p);
    if (prec < 1) throw precision_exhausted("teichmuller: precision must be >= 1");
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) throw invalid_residue("teichmuller: residue divisible by p");
    mpz_class m = pow_p(p, prec);
    mpz_class x(r), prev;
    // x -> x^p converges p-adically to the (p-1)-st root of unity in the
    // residue class of a; prec iterations always reach the fixed point.
    for (long i = 0; i < prec; ++i) {
        prev = x;
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p),
                    m.get_mpz_t());
        if (x == prev) break;
    }
    return PadicNumber::from_integer(x, p, prec);
}

} // namespace cyclog
