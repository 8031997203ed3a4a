#include "cyclog/filtration.hpp"

namespace cyclog {

long filtration_level(const CycloElt& u) {
    if (u.is_zero() || valuation_pi(u) != 0)
        throw not_a_unit("filtration level is defined for units only");
    return valuation_pi(u - CycloElt::one(u.prime(), u.coeff_prec()));
}

SplitDecomposition split_U1(const CycloElt& u) {
    const long p = u.prime();
    const long m = u.coeff_prec();
    long level = filtration_level(u);
    if (level < 1)
        throw not_in_u1("splitting requires a principal unit (u == 1 mod pi)");
    long j = 0;
    if (level == 1) {
        DigitExpansion d = pi_adic_digits(u - CycloElt::one(p, m), 1);
        j = d.digits[0];
    }
    CycloElt u2 = CycloElt::zeta(p, m).pow(static_cast<unsigned long>((p - j) % p)) * u;
    if (filtration_level(u2) < 2)
        throw lift_failure("splitting produced a component outside 1 + m^2");
    return SplitDecomposition{j, u2};
}

long graded_class(const CycloElt& u, long i) {
    const long p = u.prime();
    if (i == 0) {
        if (u.is_zero() || valuation_pi(u) != 0)
            throw not_a_unit("graded class at level 0 needs a unit");
        mpz_class r = u.coord(0) % p;
        return r.get_si();
    }
    long level = filtration_level(u);
    if (level < i)
        throw not_in_u1("graded class at level " + std::to_string(i) +
                        " needs a unit in U^(" + std::to_string(i) + ")");
    if (level > i) return 0; // lies in the kernel U^(i+1)
    DigitExpansion d = pi_adic_digits(u - CycloElt::one(p, u.coeff_prec()), 1);
    return d.digits[0];
}

OrderCheckReport order_check_U1_mod_U2(long p, long cprec, long samples, uint64_t seed) {
    require_odd_prime(p);
    OrderCheckReport rep{p, 0, samples, true, false};
    const CycloElt one = CycloElt::one(p, cprec);
    const CycloElt pi = CycloElt::pi(p, cprec);

    // Enumerate candidate representatives 1 + b pi and check pairwise
    // inequivalence: (1 + a pi)/(1 + b pi) must not lie in U^(2).
    std::vector<CycloElt> reps;
    for (long b = 0; b < p; ++b) reps.push_back(one + pi.mul_small(b));
    long classes = 0;
    for (long a = 0; a < p; ++a) {
        bool duplicate = false;
        for (long b = 0; b < a; ++b) {
            CycloElt q = reps[static_cast<size_t>(a)] * cyclo_inv(reps[static_cast<size_t>(b)]);
            if (filtration_level(q) >= 2) duplicate = true;
        }
        if (!duplicate) ++classes;
    }
    rep.classes = classes;

    // Every sampled principal unit must land in exactly one enumerated class.
    SplitMix64 rng(seed);
    for (long s = 0; s < samples; ++s) {
        CycloElt u = CycloElt::one(p, cprec) +
                     random_element(p, cprec, RandomShape::in_m_pow, 1, rng.next());
        long hits = 0;
        for (long b = 0; b < p; ++b) {
            CycloElt q = u * cyclo_inv(reps[static_cast<size_t>(b)]);
            if (filtration_level(q) >= 2) ++hits;
        }
        if (hits != 1) rep.all_covered = false;
    }
    rep.pass = (rep.classes == p) && rep.all_covered;
    return rep;
}

QuotientIsoReport quotient_iso_check(long i, long p, long cprec, long samples, uint64_t seed) {
    require_odd_prime(p);
    if (i < 0) throw error("quotient index must be >= 0");
    if ((i + 1) >= (p - 1) * cprec)
        throw precision_exhausted("quotient level exceeds the stored filtration depth");
    QuotientIsoReport rep{i, p, samples, i == 0 ? p - 1 : p, 0, 0, 0, false};
    SplitMix64 rng(seed);
    std::vector<bool> hit(static_cast<size_t>(p), false);

    auto sample_unit = [&](SplitMix64& r) {
        if (i == 0) return random_element(p, cprec, RandomShape::unit, 0, r.next());
        // 1 + (element of m^i): uniform over U^(i)
        return CycloElt::one(p, cprec) +
               random_element(p, cprec, RandomShape::in_m_pow, i, r.next());
    };

    for (long s = 0; s < samples; ++s) {
        CycloElt u = sample_unit(rng);
        CycloElt v = sample_unit(rng);
        long cu = graded_class(u, i);
        long cv = graded_class(v, i);
        long cuv = graded_class(u * v, i);
        hit[static_cast<size_t>(cu)] = true;
        hit[static_cast<size_t>(cv)] = true;
        if (i == 0) {
            if (cuv != (cu * cv) % p) ++rep.hom_failures;
        } else {
            if (cuv != (cu + cv) % p) ++rep.hom_failures;
        }
        // kernel: class 0 (class 1 at level 0) exactly when u sits one step
        // deeper in the filtration
        long trivial = (i == 0) ? 1 : 0;
        bool in_next = (i == 0) ? (filtration_level(u) >= 1)
                                : (filtration_level(u) >= i + 1);
        if ((cu == trivial) != in_next) ++rep.kernel_failures;
    }

    long count = 0;
    for (long r = 0; r < p; ++r)
        if (hit[static_cast<size_t>(r)]) ++count;
    if (i == 0 && hit[0]) count = -1; // impossible class for the unit group
    rep.classes_hit = count;
    rep.pass = rep.hom_failures == 0 && rep.kernel_failures == 0 &&
               rep.classes_hit == rep.expected_classes;
    return rep;
}

} // namespace cyclog
