#include "cyclog/hensel.hpp"

#include <algorithm>
#include <string>

#include "cyclog/errors.hpp"

namespace cyclog {

namespace {

// Residue of x modulo pi: the power basis collapses to the constant
// coordinate on the residue field.
long residue_mod_pi(const CycloElt& x) {
    return static_cast<long>(mpz_fdiv_ui(x.coord(0).get_mpz_t(),
                                         static_cast<unsigned long>(x.prime())));
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

} // namespace

CycloElt OKPolynomial::eval(const CycloElt& x) const {
    if (coeffs.empty()) throw error("eval: polynomial has no coefficients");
    CycloElt acc = coeffs.back();
    for (long i = degree() - 1; i >= 0; --i) {
        acc = acc * x + coeffs[static_cast<size_t>(i)];
    }
    return acc;
}

OKPolynomial OKPolynomial::derivative() const {
    if (coeffs.empty()) throw error("derivative: polynomial has no coefficients");
    if (coeffs.size() == 1) {
        return OKPolynomial{{CycloElt::zero(coeffs[0].prime(), coeffs[0].coeff_prec())}};
    }
    std::vector<CycloElt> d;
    d.reserve(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) {
        d.push_back(coeffs[i].mul_small(static_cast<long>(i)));
    }
    return OKPolynomial{std::move(d)};
}

LiftResult newton_lift(const OKPolynomial& f, const CycloElt& x0,
                       const CycloElt& uniformizer, long target) {
    const long p = x0.prime();
    if (target < 1) throw outside_domain("newton_lift: target must be >= 1");
    if (valuation_pi(uniformizer) != 1) {
        throw outside_domain("newton_lift: the lifting element must be a uniformizer");
    }

    const OKPolynomial fp = f.derivative();
    CycloElt x = x0;
    CycloElt r = f.eval(x);
    CycloElt d = fp.eval(x);

    if (valuation_pi(d) != 0) {
        throw simple_root_violation("newton_lift: derivative at the start is not a unit");
    }
    {
        const long vr0 = valuation_pi(r);
        if (vr0 != kPiValuationInfinity && vr0 < 1) {
            throw simple_root_violation("newton_lift: starting residue is not a root modulo pi");
        }
    }
    // Certifying v_pi(residual) >= target needs the residual stored to at
    // least that many digit positions, and extracting the digit of
    // residual / pi^(n+1) near the end must leave at least one coefficient
    // digit standing.
    const long mprec = r.coeff_prec();
    if ((p - 1) * mprec < target || mprec - ceil_div(target - 1, p - 1) < 1) {
        throw precision_exhausted("newton_lift: target exceeds the digit room of the inputs");
    }

    const long d0 = residue_mod_pi(d);
    const mpz_class inv_d = inv_mod(d0, p);
    const long inv_d0 = static_cast<long>(inv_d.get_si());

    LiftTrace trace;
    CycloElt upow = uniformizer; // uniformizer^(n+1) for the current step
    const long max_steps = target + 2;
    for (long n = 0;; ++n) {
        const long vr = valuation_pi(r);
        if (vr == kPiValuationInfinity) {
            trace.final_residual_valuation = r.pi_prec();
            trace.residual_exact_zero = true;
            break;
        }
        if (vr >= target) {
            trace.final_residual_valuation = vr;
            trace.residual_exact_zero = false;
            break;
        }
        if (vr < n + 1 || n >= max_steps) {
            throw stall_detected("newton_lift: residual valuation stopped increasing at step " +
                                 std::to_string(n));
        }

        const CycloElt dn = fp.eval(x);
        const long dn0 = residue_mod_pi(dn);

        const CycloElt q = div_exact(r, upow);
        const long q0 = residue_mod_pi(q);
        const long z = (p - (q0 * inv_d0) % p) % p;

        const CycloElt step_elt = upow.mul_small(z);
        const CycloElt xs = x + step_elt;
        const CycloElt r_next = f.eval(xs);

        // Taylor identity at this step, at the precision the elements carry.
        const CycloElt diff = r_next - (r + step_elt * dn);
        const long vdiff = valuation_pi(diff);
        const long want = std::min(2 * (n + 1), diff.pi_prec());
        const bool taylor_ok = (vdiff == kPiValuationInfinity) || vdiff >= want;

        trace.steps.push_back(LiftStep{n, z, vr, taylor_ok, dn0});
        x = xs;
        r = r_next;
        upow = upow * uniformizer;
    }
    return LiftResult{x, trace};
}

OKPolynomial PhiSeries::lift_equation() const {
    const long cprec = std::min(y.coeff_prec(), pi2.coeff_prec());
    const long deg = std::max(D, p);
    std::vector<CycloElt> h(static_cast<size_t>(deg) + 1, CycloElt::zero(p, cprec));
    h[0] = -(pi2 * y);
    h[1] = CycloElt::one(p, cprec);
    h[static_cast<size_t>(p)] = -CycloElt::one(p, cprec);
    for (long n = 2; n <= D; ++n) {
        if (n == p) continue;
        h[static_cast<size_t>(n)] = pi2 * tail[static_cast<size_t>(n - 2)];
    }
    return OKPolynomial{std::move(h)};
}

PhiSeries build_phi(const CycloElt& y, const CycloElt& pi2, long D) {
    if (y.prime() != pi2.prime()) throw prime_mismatch("build_phi: mixed primes");
    const long p = y.prime();
    if (D < 2) throw outside_domain("build_phi: truncation degree must be >= 2");
    const long cprec = std::min(y.coeff_prec(), pi2.coeff_prec());

    PhiSeries s{p, D, y.at_coeff_prec(cprec), pi2.at_coeff_prec(cprec), {}};
    s.tail.reserve(static_cast<size_t>(D - 1));
    CycloElt power = CycloElt::one(p, cprec); // pi2^(n-2)
    for (long n = 2; n <= D; ++n) {
        if (n == p) {
            // Absorbed: pi2^(p-2)/p has no integral meaning here; the
            // uniformizer identity pi2^p/p = -pi2 moves this slot into the
            // linear term of the lift equation.
            s.tail.push_back(CycloElt::zero(p, cprec));
        } else {
            long rest = n;
            long k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            CycloElt c = (k > 0) ? power.div_exact_p(k) : power;
            const long sign = (n % 2 == 0) ? -1 : 1;
            c = c.mul_scalar(PadicNumber::from_rational(sign, rest, p, c.coeff_prec()));
            s.tail.push_back(std::move(c));
        }
        if (n < D) power = power * pi2;
    }
    return s;
}

SolvePhiResult solve_phi(const CycloElt& y, const CycloElt& pi2, long target) {
    if (y.prime() != pi2.prime()) throw prime_mismatch("solve_phi: mixed primes");
    const long p = y.prime();
    if (valuation_pi(y) != 0) throw not_a_unit("solve_phi: the target y must be a unit");
    {
        const CycloElt check = pi2.pow(static_cast<unsigned long>(p - 1)) +
                               CycloElt::from_integer(p, p, pi2.coeff_prec());
        if (!check.is_zero()) {
            throw outside_domain("solve_phi: the uniformizer must be the distinguished root of -p");
        }
    }
    const long cprec = std::min(y.coeff_prec(), pi2.coeff_prec());

    // Unsupplied target: take the deepest residual valuation the stored
    // precision can certify, accounting for the coefficient digits the tail
    // divisions consume and for the digit room newton_lift itself needs.
    long T = target;
    if (T <= 0) {
        for (T = (p - 1) * (cprec - 1); T >= 1; --T) {
            const long D = truncation_bound(p, 1, T + 2).n_max;
            long kmax = 0;
            for (long q = p; q <= D; q *= p) ++kmax;
            const long mprec = cprec - kmax;
            if (mprec < 2) continue;
            if ((p - 1) * mprec >= T && mprec - (T - 2 + p - 1) / (p - 1) >= 1) break;
        }
        if (T < 1) throw precision_exhausted("solve_phi: not enough precision for any lift target");
    }

    const long D = truncation_bound(p, 1, T + 2).n_max;
    const PhiSeries phi = build_phi(y, pi2, D);
    const OKPolynomial H = phi.lift_equation();

    const long y0 = residue_mod_pi(y);
    SolvePhiResult out{SolveStatus::no_residue_solution, {}, {}, T, D};
    for (long v = 1; v < p; ++v) {
        if ((2 * y0 + v * v) % p == 0) out.solvable_residues.push_back(v);
    }
    if (out.solvable_residues.empty()) return out;

    out.status = SolveStatus::solved;
    for (long v : out.solvable_residues) {
        LiftResult lifted = newton_lift(H, CycloElt::from_integer(v, p, cprec), pi2, T);
        out.solutions.push_back(PhiSolution{v, std::move(lifted.root), std::move(lifted.trace)});
    }
    return out;
}

} // namespace cyclog
