#pragma once

#include <cstdint>
#include <vector>

#include "cyclog/cyclo.hpp"

namespace cyclog {

// Position of a unit u in the principal-unit filtration
// U^(0) = O^x  >  U^(1) = 1 + m  >  U^(2) = 1 + m^2  >  ...
// level(u) = v_pi(u - 1); kPiValuationInfinity means u == 1 at the stored
// precision.  Throws not_a_unit unless v_pi(u) = 0.
long filtration_level(const CycloElt& u);

// Decomposition certificate for U^(1) = <zeta_p> x U^(2): u = zeta_p^j * u2
// with the exponent j in 0..p-1 and u2 == 1 mod pi^2, both exact at the
// stored precision.  Throws not_in_u1 unless level(u) >= 1.
struct SplitDecomposition {
    long j;
    CycloElt u2;
};

SplitDecomposition split_U1(const CycloElt& u);

// Exhaustive check that U^(1)/U^(2) has exactly p classes: the candidate
// representatives 1 + b*pi (b = 0..p-1) are pairwise inequivalent and every
// sampled principal unit falls into one of their classes.
struct OrderCheckReport {
    long p;
    long classes;        // number of distinct classes found (expect p)
    long samples;        // random units classified
    bool all_covered;    // every sample matched an enumerated class
    bool pass;
};

OrderCheckReport order_check_U1_mod_U2(long p, long cprec, long samples, uint64_t seed);

// Randomized isomorphism check for one graded quotient:
//   i = 0:  U^(0)/U^(1) ~ F_p^x  via  u -> u mod pi           (multiplicative)
//   i >= 1: U^(i)/U^(i+1) ~ F_p  via  u -> digit_i(u - 1)     (additive)
// Verifies the map is a homomorphism on sampled pairs, that its kernel is
// exactly the next filtration step, and that every class is hit.
struct QuotientIsoReport {
    long i;
    long p;
    long samples;
    long expected_classes;
    long classes_hit;
    long hom_failures;
    long kernel_failures;
    bool pass;
};

QuotientIsoReport quotient_iso_check(long i, long p, long cprec, long samples, uint64_t seed);

// The class of u in U^(i)/U^(i+1) under the maps above (a residue mod p;
// for i = 0 a nonzero residue).
long graded_class(const CycloElt& u, long i);

} // namespace cyclog
