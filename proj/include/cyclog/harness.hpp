#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclog/cyclo.hpp"

namespace cyclog {

// One verified sub-claim of a verification run: how many instances were
// checked and one reproducible witness string per failure (the sample index
// together with the offending element, printable and replayable from the
// report's seed alone).
struct ClaimOutcome {
    std::string name;
    long checked = 0;
    long failures = 0;
    std::vector<std::string> witnesses;

    bool pass() const { return failures == 0 && checked > 0; }
};

// Residues mod pi attained by y(v) = log(1 + pi2*v) / pi2^2 as v ranges over
// single-digit units and over two-digit units a + b*pi2.  For each residue
// class r in 0..p-1 the table stores the first v attaining it ("" when the
// class is not attained).
struct CoverageScan {
    long p = 0;
    std::vector<std::string> single_witness;  // size p, indexed by residue
    std::vector<std::string> two_witness;     // size p, indexed by residue
    std::vector<long> single_digit;           // attained residues, ascending
    std::vector<long> two_digit;
    bool strictly_larger = false;             // two-digit set strictly larger
};

// Structured outcome of one verification family at fixed (p, M, samples,
// seed).  Deterministic: equal inputs produce byte-identical reports,
// regardless of how many worker threads evaluated the samples.
struct VerificationReport {
    long schema_version = 1;
    std::string family;  // "principal-units-log" or "annulus-log"
    long p = 0;
    long M = 0;
    long samples = 0;
    uint64_t seed = 0;
    std::vector<ClaimOutcome> claims;
    CoverageScan coverage;  // populated by the annulus family only
    bool pass = false;
};

// Deterministic per-sample RNG stream: worker threads draw sample `index`
// of claim `tag` from a splitmix64 stream derived from (seed, tag, index),
// so reports do not depend on scheduling order.
uint64_t sample_stream(uint64_t seed, uint64_t tag, long index);

// Worker threads used for the sample loops: OpenMP's default, capped by the
// PADIC_FORMAL_THREADS environment variable when it is set to a positive
// integer.
int harness_threads();

// Empirical verification that log is a bijection from the principal units
// onto m^2 up to the p-th roots of unity.  Per random sample:
//   forward    u in U^(1)  =>  v_pi(log(u)) >= 2,
//   backward   z in m^2    =>  exp(z) in U^(2) and log(exp(z)) == z,
//   roundtrip  u in U^(2)  =>  exp(log(u)) == u,
//   kernel     log(zeta_p^j) is exact zero for every j,
//   splitting  log(u) == log(u2) for the canonical split u = zeta^j * u2.
// Every logarithm/exponential entering a verdict is re-checked against the
// serial reference summation (naive_log1p / naive_exp); a discrepancy is a
// failure.  Sample loops run under OpenMP (see harness_threads()).
VerificationReport verify_log_bijection(long p, long M, long samples,
                                        uint64_t seed);

// Empirical verification that log maps the annulus (1+m) \ (1+m^2) onto all
// of m^2.  Per random sample:
//   forward    v_pi(u-1) = 1      =>  v_pi(log(u)) >= 2,
//   backward   z in m^2          =>  u := zeta_p * exp(z) has filtration
//              level exactly 1, splits with exponent 1, and log(u) == z,
//   solve      random unit y with a solvable digit equation  =>  the lifted
//              root x0 satisfies log(1 + pi2*x0) == pi2^2 * y exactly to the
//              certified precision, with every lift step re-validated,
//   coverage   the residue scan below, requiring the two-digit set to be
//              strictly larger than the single-digit set.
// Same reference re-checks and determinism guarantee as above.
VerificationReport verify_annulus_image(long p, long M, long samples,
                                        uint64_t seed);

// Exhaustive tabulation of the residues mod pi attained by
// y(v) = log(1 + pi2*v) / pi2^2 for single-digit v = a (a = 1..p-1) and
// two-digit v = a + b*pi2 (a = 1..p-1, b = 0..p-1), each value re-checked
// against the serial reference.
CoverageScan residue_coverage_scan(long p, long M);

// One annotated arrow of the containment diagram.
struct FlowArrow {
    std::string from;
    std::string to;
    std::string label;      // the map
    std::string statement;  // what was verified about its image
    bool verified = false;
};

// The containment chains U^(1) > U^(2) > ... and m > m^2 > ... down to the
// full stored depth (p-1)*M, with one arrow per verified mapping statement.
// Replaces a picture: meant to be emitted as JSON or a text table.
struct FlowReport {
    long schema_version = 1;
    long p = 0;
    long M = 0;
    long depth = 0;  // pi-adic levels tracked = (p-1)*M
    std::vector<std::string> unit_chain;   // "U^(1)", ..., "U^(depth)"
    std::vector<std::string> ideal_chain;  // "m^1", ..., "m^depth"
    std::vector<FlowArrow> arrows;
    bool pass = false;
};

// Runs both verification families (at `samples` samples each) and assembles
// the annotated containment diagram.
FlowReport flow_report(long p, long M, long samples = 50, uint64_t seed = 42);

} // namespace cyclog
