#include "cyclog/cyclo.hpp"

#include <algorithm>
#include <sstream>

namespace cyclog {

namespace {

mpz_class binom(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Folds every coefficient of degree >= p-1 down through the relation
// X^(p-1) = -sum_{i=0}^{p-2} binom(p, i+1) X^i, working exactly over Z.
void reduce_mod_E(std::vector<mpz_class>& c, long p) {
    const long deg = p - 1;
    if (static_cast<long>(c.size()) <= deg) {
        c.resize(static_cast<size_t>(deg), mpz_class(0));
        return;
    }
    for (long d = static_cast<long>(c.size()) - 1; d >= deg; --d) {
        mpz_class t = c[static_cast<size_t>(d)];
        if (t == 0) continue;
        c[static_cast<size_t>(d)] = 0;
        for (long i = 0; i < deg; ++i)
            c[static_cast<size_t>(d - deg + i)] -= t * binom(p, i + 1);
    }
    c.resize(static_cast<size_t>(deg));
}

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

void mod_coords(std::vector<mpz_class>& c, const mpz_class& m) {
    for (auto& x : c) {
        x %= m;
        if (x < 0) x += m;
    }
}

// Multiplies an exact coordinate vector by pi (shift then fold the top
// term); used by the digit peeler and the norm matrix builder.
std::vector<mpz_class> shift_mul_pi(const std::vector<mpz_class>& c, long p) {
    const long deg = p - 1;
    std::vector<mpz_class> r(static_cast<size_t>(deg), mpz_class(0));
    mpz_class top = c[static_cast<size_t>(deg - 1)];
    for (long i = deg - 1; i >= 1; --i) r[static_cast<size_t>(i)] = c[static_cast<size_t>(i - 1)];
    r[0] = 0;
    if (top != 0)
        for (long i = 0; i < deg; ++i) r[static_cast<size_t>(i)] -= top * binom(p, i + 1);
    return r;
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const long n = static_cast<long>(m.size());
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            long r = k + 1;
            while (r < n && m[static_cast<size_t>(r)][static_cast<size_t>(k)] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(r)]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                mpz_class t = m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                  m[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                              m[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                  m[static_cast<size_t>(k)][static_cast<size_t>(j)];
                mpz_divexact(m[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpz_t(),
                             t.get_mpz_t(), prev.get_mpz_t());
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    mpz_class det = m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    return sign < 0 ? mpz_class(-det) : det;
}

} // namespace

EisensteinPoly::EisensteinPoly(long p) : p_(p) {
    require_odd_prime(p);
    coeffs_.reserve(static_cast<size_t>(p));
    for (long i = 0; i < p; ++i) coeffs_.push_back(binom(p, i + 1));
}

bool eisenstein_check(const std::vector<mpz_class>& coeffs, long p) {
    if (coeffs.size() < 2) return false;
    if (coeffs.back() != 1) return false;
    if (coeffs[0] % p != 0) return false;
    if (coeffs[0] % (mpz_class(p) * p) == 0) return false; // v_p(a_0) must be exactly 1
    for (size_t i = 1; i + 1 < coeffs.size(); ++i)
        if (coeffs[i] % p != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// CycloElt
// ---------------------------------------------------------------------------

CycloElt::CycloElt(long p, long cprec, std::vector<mpz_class> coords)
    : p_(p), cprec_(cprec), c_(std::move(coords)) {
    require_odd_prime(p);
    if (cprec < 1)
        throw precision_exhausted("element precision dropped to " + std::to_string(cprec));
    reduce_mod_E(c_, p_);
    mod_coords(c_, pow_p(p_, cprec_));
}

CycloElt CycloElt::zero(long p, long cprec) { return CycloElt(p, cprec, {}); }

CycloElt CycloElt::one(long p, long cprec) {
    return CycloElt(p, cprec, {mpz_class(1)});
}

CycloElt CycloElt::pi(long p, long cprec) {
    return CycloElt(p, cprec, {mpz_class(0), mpz_class(1)});
}

CycloElt CycloElt::zeta(long p, long cprec) {
    return CycloElt(p, cprec, {mpz_class(1), mpz_class(1)});
}

CycloElt CycloElt::from_integer(const mpz_class& n, long p, long cprec) {
    return CycloElt(p, cprec, {n});
}

CycloElt CycloElt::from_scalar(const PadicNumber& s, long cprec) {
    long m = std::min(cprec, s.precision());
    if (s.is_zero()) return zero(s.prime(), m);
    if (s.valuation() < 0)
        throw outside_domain("scalar with negative valuation is not integral");
    return CycloElt(s.prime(), m, {s.residue_mod(m)});
}

bool CycloElt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

bool CycloElt::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

PadicNumber CycloElt::coefficient(long j) const {
    return PadicNumber::from_integer(coord(j), p_, cprec_);
}

CycloElt CycloElt::at_coeff_prec(long cprec) const {
    if (cprec > cprec_) throw error("at_coeff_prec: cannot raise precision");
    if (cprec == cprec_) return *this;
    return CycloElt(p_, cprec, c_);
}

CycloElt CycloElt::operator-() const {
    std::vector<mpz_class> r(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) r[j] = -c_[j];
    return CycloElt(p_, cprec_, std::move(r));
}

static void check_same_prime(const CycloElt& a, const CycloElt& b) {
    if (a.prime() != b.prime())
        throw prime_mismatch("elements live over p=" + std::to_string(a.prime()) +
                             " and p=" + std::to_string(b.prime()));
}

CycloElt operator+(const CycloElt& a, const CycloElt& b) {
    check_same_prime(a, b);
    long m = std::min(a.coeff_prec(), b.coeff_prec());
    std::vector<mpz_class> r(a.coords());
    for (size_t j = 0; j < r.size(); ++j) r[j] += b.coords()[j];
    return CycloElt(a.prime(), m, std::move(r));
}

CycloElt operator-(const CycloElt& a, const CycloElt& b) { return a + (-b); }

CycloElt operator*(const CycloElt& a, const CycloElt& b) {
    check_same_prime(a, b);
    long m = std::min(a.coeff_prec(), b.coeff_prec());
    return CycloElt(a.prime(), m, poly_mul(a.coords(), b.coords()));
}

CycloElt CycloElt::mul_small(long k) const {
    std::vector<mpz_class> r(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) r[j] = c_[j] * k;
    return CycloElt(p_, cprec_, std::move(r));
}

CycloElt CycloElt::mul_scalar(const PadicNumber& s) const {
    if (s.prime() != p_)
        throw prime_mismatch("scalar prime differs from element prime");
    if (s.is_zero()) {
        long m = std::min(cprec_, s.precision());
        return zero(p_, m);
    }
    long v = s.valuation();
    long t = std::min(cprec_, s.precision() - v); // knowledge of the unit-level product
    long out = t + v;
    if (out < 1)
        throw precision_exhausted("scalar multiple precision dropped to " + std::to_string(out));
    mpz_class mt = pow_p(p_, t);
    std::vector<mpz_class> r(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) {
        r[j] = (c_[j] % mt) * (s.unit_part() % mt) % mt;
        if (v >= 0) {
            r[j] *= pow_p(p_, v);
        } else if (r[j] != 0) {
            if (mpz_divisible_p(r[j].get_mpz_t(), pow_p(p_, -v).get_mpz_t()) == 0)
                throw not_divisible("coefficient " + std::to_string(j) +
                                    " is not divisible by p^" + std::to_string(-v));
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), r[j].get_mpz_t(), pow_p(p_, -v).get_mpz_t());
            r[j] = q;
        }
    }
    return CycloElt(p_, out, std::move(r));
}

CycloElt CycloElt::pow(unsigned long e) const {
    CycloElt acc = one(p_, cprec_);
    CycloElt base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

CycloElt CycloElt::div_exact_p(long k) const {
    if (k < 0) throw error("div_exact_p: negative exponent");
    if (k == 0) return *this;
    if (cprec_ - k < 1)
        throw precision_exhausted("division by p^" + std::to_string(k) +
                                  " exhausts coefficient precision " + std::to_string(cprec_));
    mpz_class pk = pow_p(p_, k);
    std::vector<mpz_class> r(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) {
        if (mpz_divisible_p(c_[j].get_mpz_t(), pk.get_mpz_t()) == 0)
            throw not_divisible("coefficient " + std::to_string(j) +
                                " is not divisible by p^" + std::to_string(k));
        mpz_divexact(r[j].get_mpz_t(), c_[j].get_mpz_t(), pk.get_mpz_t());
    }
    return CycloElt(p_, cprec_ - k, std::move(r));
}

bool operator==(const CycloElt& a, const CycloElt& b) {
    return a.p_ == b.p_ && a.cprec_ == b.cprec_ && a.c_ == b.c_;
}

std::string CycloElt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t j = 0; j < c_.size(); ++j) {
        if (j) os << ", ";
        os << c_[j].get_str();
    }
    os << "] mod " << p_ << "^" << cprec_;
    return os.str();
}

// ---------------------------------------------------------------------------
// Valuation, digits, norm
// ---------------------------------------------------------------------------

long valuation_pi(const CycloElt& x) {
    const long p = x.prime();
    long best = kPiValuationInfinity;
    for (long j = 0; j < p - 1; ++j) {
        const mpz_class& c = x.coord(j);
        if (c == 0) continue;
        long v = j + (p - 1) * int_valuation(c, p);
        best = std::min(best, v);
    }
    return best;
}

DigitExpansion pi_adic_digits(const CycloElt& x, long count) {
    const long p = x.prime();
    if (count < 0) throw error("pi_adic_digits: negative count");
    long v = valuation_pi(x);
    if (v == kPiValuationInfinity) {
        if (count > x.pi_prec())
            throw precision_exhausted("requested " + std::to_string(count) +
                                      " digits, only " + std::to_string(x.pi_prec()) +
                                      " are certified");
        return DigitExpansion{0, std::vector<long>(static_cast<size_t>(count), 0)};
    }
    if (v + count > x.pi_prec())
        throw precision_exhausted("requested digits through position " +
                                  std::to_string(v + count) + ", only " +
                                  std::to_string(x.pi_prec()) + " are certified");
    // -Q(X) with E(X) = X*Q(X) + p, so that 1/pi = -Q(pi)/p exactly; one peel
    // step is an exact integer multiply, an exact division by p, and a
    // reduction that only perturbs digit positions >= (p-1)*cprec.
    std::vector<mpz_class> qneg(static_cast<size_t>(p - 1));
    for (long j = 0; j <= p - 2; ++j) qneg[static_cast<size_t>(j)] = -binom(p, j + 2);
    mpz_class m = pow_p(p, x.coeff_prec());
    std::vector<mpz_class> r = x.coords();
    DigitExpansion out;
    out.n0 = v;
    out.digits.reserve(static_cast<size_t>(count));
    for (long step = 0; step < v + count; ++step) {
        mpz_class b = r[0] % p;
        long beta = b.get_si();
        if (step < v) {
            if (beta != 0) throw error("pi_adic_digits: internal digit below valuation");
        } else {
            out.digits.push_back(beta);
        }
        if (step + 1 == v + count) break; // last digit collected; skip the peel
        r[0] -= beta;
        std::vector<mpz_class> t = poly_mul(r, qneg);
        reduce_mod_E(t, p);
        for (auto& coord : t) {
            if (mpz_divisible_ui_p(coord.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
                throw error("pi_adic_digits: internal exact division failed");
            mpz_class q;
            mpz_divexact_ui(q.get_mpz_t(), coord.get_mpz_t(), static_cast<unsigned long>(p));
            coord = q % m;
            if (coord < 0) coord += m;
        }
        r = std::move(t);
    }
    return out;
}

CycloElt from_digits(long p, long cprec, const DigitExpansion& d) {
    require_odd_prime(p);
    for (long b : d.digits)
        if (b < 0 || b >= p)
            throw invalid_residue("digit " + std::to_string(b) +
                                  " outside canonical set of p=" + std::to_string(p));
    if (d.n0 < 0) throw error("from_digits: negative starting position");
    std::vector<mpz_class> acc(static_cast<size_t>(p - 1), mpz_class(0));
    for (size_t i = d.digits.size(); i-- > 0;) {
        acc = shift_mul_pi(acc, p);
        acc[0] += d.digits[i];
    }
    for (long s = 0; s < d.n0; ++s) acc = shift_mul_pi(acc, p);
    return CycloElt(p, cprec, std::move(acc));
}

PadicNumber norm_to_qp(const CycloElt& x) {
    const long p = x.prime();
    const long n = p - 1;
    // Column j holds the coordinates of x * pi^j.
    std::vector<std::vector<mpz_class>> m(static_cast<size_t>(n),
                                          std::vector<mpz_class>(static_cast<size_t>(n)));
    std::vector<mpz_class> t = x.coords();
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = t[static_cast<size_t>(i)];
        if (j + 1 < n) t = shift_mul_pi(t, p);
    }
    mpz_class det = bareiss_det(std::move(m));
    return PadicNumber::from_integer(det, p, x.coeff_prec());
}

CycloElt cyclo_inv(const CycloElt& x) {
    const long p = x.prime();
    const long m = x.coeff_prec();
    if (x.is_zero() || x.coord(0) % p == 0)
        throw not_a_unit("inversion requires a unit (pi-adic valuation 0)");
    CycloElt one = CycloElt::one(p, m);
    mpz_class y0 = inv_mod(x.coord(0) % p, mpz_class(p));
    CycloElt y = CycloElt::from_integer(y0, p, m);
    // y <- y (2 - x y): the defect 1 - x y squares every round.
    for (int iter = 0; iter < 64; ++iter) {
        CycloElt e = one - x * y;
        if (e.is_zero()) return y;
        y = y * (one + e);
    }
    throw lift_failure("unit inversion failed to converge");
}

CycloElt div_exact_pi(const CycloElt& a, long k) {
    if (k < 0) throw error("div_exact_pi: negative exponent");
    if (k == 0) return a;
    const long p = a.prime();
    const long m = a.coeff_prec();
    long q = (k + p - 2) / (p - 1); // ceil(k / (p-1))
    long va = valuation_pi(a);
    if (va != kPiValuationInfinity && va < k)
        throw not_divisible("element with v_pi=" + std::to_string(va) +
                            " is not divisible by pi^" + std::to_string(k));
    if (m - q < 1)
        throw precision_exhausted("division by pi^" + std::to_string(k) +
                                  " exhausts coefficient precision " + std::to_string(m));
    // a / pi^k = a * pi^((p-1)q - k) * (-1)^q * w^(-q) / p^q, using
    // pi^(p-1) = -p w; the division by p^q is exact.
    long t = (p - 1) * q - k;
    CycloElt y = a * CycloElt::pi(p, m).pow(static_cast<unsigned long>(t));
    CycloElt winv = cyclo_inv(eisenstein_unit(p, m));
    y = y * winv.pow(static_cast<unsigned long>(q));
    if (q % 2 == 1) y = -y;
    return y.div_exact_p(q);
}

CycloElt div_exact(const CycloElt& a, const CycloElt& b) {
    check_same_prime(a, b);
    if (b.is_zero())
        throw division_by_zero("division by exact zero at precision " +
                               std::to_string(b.coeff_prec()));
    long vb = valuation_pi(b);
    if (vb == 0) return a * cyclo_inv(b);
    long va = valuation_pi(a);
    if (va != kPiValuationInfinity && va < vb)
        throw not_divisible("quotient would have negative valuation: v_pi(a)=" +
                            std::to_string(va) + " < v_pi(b)=" + std::to_string(vb));
    CycloElt an = div_exact_pi(a, vb);
    CycloElt bu = div_exact_pi(b, vb);
    return an * cyclo_inv(bu);
}

CycloElt eisenstein_unit(long p, long cprec) {
    require_odd_prime(p);
    std::vector<mpz_class> c(static_cast<size_t>(p - 1));
    for (long i = 0; i <= p - 2; ++i) {
        mpz_class b = binom(p, i + 1);
        mpz_divexact_ui(c[static_cast<size_t>(i)].get_mpz_t(), b.get_mpz_t(),
                        static_cast<unsigned long>(p));
    }
    return CycloElt(p, cprec, std::move(c));
}

CycloElt neg_p_root(long p, long cprec) {
    require_odd_prime(p);
    CycloElt w = eisenstein_unit(p, cprec);
    CycloElt target = cyclo_inv(w); // == 1 mod pi, so u0 = 1 seeds the branch
    CycloElt u = CycloElt::one(p, cprec);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        CycloElt g = u.pow(static_cast<unsigned long>(p - 1)) - target;
        if (g.is_zero()) {
            converged = true;
            break;
        }
        CycloElt gp = u.pow(static_cast<unsigned long>(p - 2)).mul_small(p - 1);
        u = u - g * cyclo_inv(gp);
    }
    if (!converged) throw lift_failure("root of the unit equation did not converge");
    CycloElt pi2 = u * CycloElt::pi(p, cprec);
    // Exact postconditions at the stored precision.
    if (!(pi2.pow(static_cast<unsigned long>(p - 1)) +
          CycloElt::from_integer(p, p, cprec)).is_zero())
        throw lift_failure("pi2^(p-1) + p does not vanish");
    if (cprec >= 2) {
        CycloElt s = pi2.at_coeff_prec(cprec - 1) +
                     pi2.pow(static_cast<unsigned long>(p)).div_exact_p(1);
        if (!s.is_zero()) throw lift_failure("pi2 + pi2^p/p does not vanish");
    }
    if (valuation_pi(pi2) != 1) throw lift_failure("pi2 is not a uniformizer");
    return pi2;
}

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t bound) {
    uint64_t threshold = (UINT64_MAX / bound) * bound;
    uint64_t v;
    do {
        v = next();
    } while (v >= threshold);
    return v % bound;
}

CycloElt random_element(long p, long cprec, RandomShape shape, long k, uint64_t seed) {
    require_odd_prime(p);
    if (cprec < 1) throw precision_exhausted("random_element: precision must be >= 1");
    const long len = (p - 1) * cprec;
    SplitMix64 rng(seed);
    DigitExpansion d;
    d.n0 = 0;
    d.digits.assign(static_cast<size_t>(len), 0);
    switch (shape) {
    case RandomShape::unit:
        d.digits[0] = 1 + static_cast<long>(rng.below(static_cast<uint64_t>(p - 1)));
        for (long i = 1; i < len; ++i)
            d.digits[static_cast<size_t>(i)] = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
        return from_digits(p, cprec, d);
    case RandomShape::in_m_pow: {
        if (k < 1 || k >= len)
            throw error("random_element: ideal power out of range");
        for (long i = k; i < len; ++i)
            d.digits[static_cast<size_t>(i)] = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
        return from_digits(p, cprec, d);
    }
    case RandomShape::annulus: {
        // principal unit u with v_pi(u - 1) exactly 1
        d.digits[0] = 1;
        d.digits[1] = 1 + static_cast<long>(rng.below(static_cast<uint64_t>(p - 1)));
        for (long i = 2; i < len; ++i)
            d.digits[static_cast<size_t>(i)] = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
        return from_digits(p, cprec, d);
    }
    }
    throw error("random_element: unknown shape");
}

} // namespace cyclog
