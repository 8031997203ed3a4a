#include "cyclog/naive.hpp"

#include "cyclog/errors.hpp"

#include <algorithm>

namespace cyclog {

namespace {

// Dense polynomial arithmetic modulo (E_p(X), p^K), independent of the
// representation helpers inside CycloElt: coefficients are plain canonical
// residues, multiplication is the schoolbook convolution, and reduction
// folds the top coefficients down with the monic relation
//     X^(p-1) = -sum_{i=0}^{p-2} binom(p, i+1) X^i.
struct DensePolyRing {
    long p;
    mpz_class mod;                // p^K
    std::vector<mpz_class> fold;  // binom(p, i+1), i = 0..p-2

    DensePolyRing(long p_, long K) : p(p_) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p_),
                      static_cast<unsigned long>(K));
        mod = pk;
        fold.resize(static_cast<size_t>(p_ - 1));
        for (long i = 0; i + 1 < p_; ++i) {
            mpz_bin_uiui(fold[static_cast<size_t>(i)].get_mpz_t(),
                         static_cast<unsigned long>(p_),
                         static_cast<unsigned long>(i + 1));
        }
    }

    void reduce(std::vector<mpz_class>& c) const {
        const size_t deg = static_cast<size_t>(p - 1);
        for (size_t d = c.size(); d-- > deg;) {
            const mpz_class top = c[d];
            if (top == 0) continue;
            c[d] = 0;
            for (size_t i = 0; i < fold.size(); ++i)
                c[d - deg + i] -= top * fold[i];
        }
        c.resize(deg);
        for (mpz_class& v : c) {
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        }
    }

    std::vector<mpz_class> mul(const std::vector<mpz_class>& a,
                               const std::vector<mpz_class>& b) const {
        std::vector<mpz_class> out(a.size() + b.size() - 1, mpz_class(0));
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        }
        reduce(out);
        return out;
    }
};

// Adds sign * (power * unit_inverse / p^j) into acc, all modulo p^K; the
// division must be exact on every coefficient.
void accumulate_term(std::vector<mpz_class>& acc,
                     const std::vector<mpz_class>& power,
                     const mpz_class& unit_inverse, long j, int sign,
                     const mpz_class& mod, long p) {
    mpz_class pj;
    mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(j));
    for (size_t i = 0; i < acc.size(); ++i) {
        mpz_class t = power[i] * unit_inverse;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
        if (j > 0) {
            if (mpz_divisible_p(t.get_mpz_t(), pj.get_mpz_t()) == 0)
                throw not_divisible(
                    "reference summation: term coefficient is not integral");
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pj.get_mpz_t());
        }
        if (sign < 0)
            acc[i] -= t;
        else
            acc[i] += t;
        mpz_fdiv_r(acc[i].get_mpz_t(), acc[i].get_mpz_t(), mod.get_mpz_t());
    }
}

CycloElt finish(const std::vector<mpz_class>& acc, long p, long m) {
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(m));
    std::vector<mpz_class> coords(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) {
        mpz_fdiv_r(coords[i].get_mpz_t(), acc[i].get_mpz_t(), pm.get_mpz_t());
    }
    return CycloElt(p, m, std::move(coords));
}

} // namespace

CycloElt naive_log1p(const CycloElt& x, long n_max) {
    const long p = x.prime();
    const long m = x.coeff_prec();
    if (n_max < 1) throw outside_domain("reference log: empty term range");
    if (x.is_zero()) return CycloElt::zero(p, m);
    if (valuation_pi(x) < 1)
        throw outside_domain("reference log: argument must lie in the maximal ideal");

    long vmax = 0;
    for (long q = p; q <= n_max; q *= p) ++vmax;
    const long K = m + vmax;
    DensePolyRing ring(p, K);

    std::vector<mpz_class> xv(x.coords());
    std::vector<mpz_class> power(static_cast<size_t>(p - 1), mpz_class(0));
    power[0] = 1;
    std::vector<mpz_class> acc(static_cast<size_t>(p - 1), mpz_class(0));

    for (long n = 1; n <= n_max; ++n) {
        power = ring.mul(power, xv);
        const long j = int_valuation(mpz_class(n), p);
        mpz_class unit = n;
        for (long t = 0; t < j; ++t) unit /= p;
        const mpz_class uinv = inv_mod(unit, ring.mod);
        const int sign = (n % 2 == 1) ? +1 : -1;
        accumulate_term(acc, power, uinv, j, sign, ring.mod, p);
    }
    return finish(acc, p, m);
}

CycloElt naive_exp(const CycloElt& x, long n_max) {
    const long p = x.prime();
    const long m = x.coeff_prec();
    if (n_max < 0) throw outside_domain("reference exp: empty term range");
    if (!x.is_zero() && valuation_pi(x) < 2)
        throw outside_domain("reference exp: argument must lie in m^2");

    mpz_class factorial = 1;
    for (long n = 2; n <= n_max; ++n) factorial *= n;
    const long vmax = int_valuation(factorial, p);
    const long K = m + vmax;
    DensePolyRing ring(p, K);

    std::vector<mpz_class> xv(x.coords());
    std::vector<mpz_class> power(static_cast<size_t>(p - 1), mpz_class(0));
    power[0] = 1;
    std::vector<mpz_class> acc(static_cast<size_t>(p - 1), mpz_class(0));

    mpz_class fact = 1;
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            power = ring.mul(power, xv);
            fact *= n;
        }
        const long j = int_valuation(fact, p);
        mpz_class unit = fact;
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(j));
        mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), pj.get_mpz_t());
        const mpz_class uinv = inv_mod(unit, ring.mod);
        accumulate_term(acc, power, uinv, j, +1, ring.mod, p);
    }
    return finish(acc, p, m);
}

bool naive_matches(const CycloElt& a, const CycloElt& b, long digits) {
    const CycloElt diff = a - b;
    if (diff.is_zero()) return true;
    const long eff = std::min(digits, diff.pi_prec());
    return valuation_pi(diff) >= eff;
}

} // namespace cyclog
