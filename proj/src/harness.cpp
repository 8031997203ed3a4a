#include "cyclog/harness.hpp"

#include "cyclog/analytic.hpp"
#include "cyclog/errors.hpp"
#include "cyclog/filtration.hpp"
#include "cyclog/hensel.hpp"
#include "cyclog/naive.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyclog {

namespace {

// Disjoint stream tags so no two claims ever draw the same sample bits.
enum : uint64_t {
    kTagForward = 1,
    kTagBackward = 2,
    kTagRoundtrip = 3,
    kTagSplitting = 4,
    kTagAnnulusForward = 5,
    kTagAnnulusBackward = 6,
    kTagSolve = 7,
};

struct SampleVerdict {
    long checked = 1;  // instances this sample contributed (0 = skipped)
    bool ok = true;
    std::string witness;
};

SampleVerdict fail(long i, const std::string& msg) {
    SampleVerdict v;
    v.ok = false;
    v.witness = "sample " + std::to_string(i) + ": " + msg;
    return v;
}

SampleVerdict skipped() {
    SampleVerdict v;
    v.checked = 0;
    return v;
}

// Runs body(i) for i = 0..samples-1, possibly across threads; the verdict
// vector is indexed by sample, so the aggregate is schedule-independent.
template <typename Body>
std::vector<SampleVerdict> run_parallel(long samples, const Body& body) {
    std::vector<SampleVerdict> out(static_cast<size_t>(samples));
#ifdef _OPENMP
    const int threads = harness_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long i = 0; i < samples; ++i) {
        try {
            out[static_cast<size_t>(i)] = body(i);
        } catch (const std::exception& e) {
            out[static_cast<size_t>(i)] =
                fail(i, std::string("exception: ") + e.what());
        } catch (...) {
            out[static_cast<size_t>(i)] = fail(i, "unknown exception");
        }
    }
    return out;
}

ClaimOutcome fold(std::string name, const std::vector<SampleVerdict>& verdicts) {
    ClaimOutcome c;
    c.name = std::move(name);
    for (const SampleVerdict& v : verdicts) {
        c.checked += v.checked;
        if (!v.ok) {
            ++c.failures;
            c.witnesses.push_back(v.witness);
        }
    }
    return c;
}

// Logarithm evaluation trusted only once the serial reference summation
// reproduces it to the certified precision; nullopt (with err set) on a
// discrepancy.
std::optional<AnalyticResult> checked_log(const CycloElt& x, long target,
                                          std::string& err) {
    AnalyticResult out = log1p(x, target);
    const CycloElt ref = naive_log1p(x, out.cert.n_max);
    if (!naive_matches(ref, out.value, out.cert.achieved)) {
        err = "reference summation disagrees with log on " + x.to_string();
        return std::nullopt;
    }
    return out;
}

std::optional<AnalyticResult> checked_exp(const CycloElt& z, long target,
                                          std::string& err) {
    AnalyticResult out = exp_map(z, target);
    const CycloElt ref = naive_exp(z, out.cert.n_max);
    if (!naive_matches(ref, out.value, out.cert.achieved)) {
        err = "reference summation disagrees with exp on " + z.to_string();
        return std::nullopt;
    }
    return out;
}

long residue_mod_pi(const CycloElt& x) {
    return static_cast<long>(mpz_fdiv_ui(x.coord(0).get_mpz_t(),
                                         static_cast<unsigned long>(x.prime())));
}

bool claim_passes(const VerificationReport& r, const std::string& name) {
    for (const ClaimOutcome& c : r.claims)
        if (c.name == name) return c.pass();
    return false;
}

} // namespace

uint64_t sample_stream(uint64_t seed, uint64_t tag, long index) {
    SplitMix64 g(seed);
    const uint64_t diffused = g.next();
    SplitMix64 h(diffused ^ (tag << 32) ^ static_cast<uint64_t>(index));
    return h.next();
}

int harness_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("PADIC_FORMAL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v < n)
            n = static_cast<int>(v);
    }
    return n;
}

VerificationReport verify_log_bijection(long p, long M, long samples,
                                        uint64_t seed) {
    VerificationReport rep;
    rep.family = "principal-units-log";
    rep.p = p;
    rep.M = M;
    rep.samples = samples;
    rep.seed = seed;

    const CycloElt one = CycloElt::one(p, M);
    const CycloElt zeta = CycloElt::zeta(p, M);

    // forward: log(U^(1)) subset m^2.
    rep.claims.push_back(fold(
        "forward", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt x = random_element(
                p, M, RandomShape::in_m_pow, 1, sample_stream(seed, kTagForward, i));
            if (x.is_zero()) return {};  // u = 1: log is 0, trivially in m^2
            std::string err;
            const auto lg = checked_log(x, best_log_target(p, valuation_pi(x), M), err);
            if (!lg) return fail(i, err);
            if (!lg->value.is_zero() && valuation_pi(lg->value) < 2)
                return fail(i, "v_pi(log(1+x)) < 2 for x = " + x.to_string());
            return {};
        })));

    // backward: z in m^2 => exp(z) in U^(2) and log(exp(z)) == z.
    rep.claims.push_back(fold(
        "backward", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt z = random_element(
                p, M, RandomShape::in_m_pow, 2, sample_stream(seed, kTagBackward, i));
            if (z.is_zero()) return {};  // exp(0) = 1 in U^(2), log(1) = 0
            std::string err;
            const auto e = checked_exp(z, best_exp_target(p, valuation_pi(z), M), err);
            if (!e) return fail(i, err);
            if (filtration_level(e->value) < 2)
                return fail(i, "exp(z) not in U^(2) for z = " + z.to_string());
            const CycloElt back =
                e->value - CycloElt::one(p, e->value.coeff_prec());
            if (back.is_zero())
                return fail(i, "exp(z) == 1 for nonzero z = " + z.to_string());
            const auto lg =
                checked_log(back, best_log_target(p, valuation_pi(back), M), err);
            if (!lg) return fail(i, err);
            const CycloElt diff = lg->value - z;
            const long need =
                std::min({e->cert.achieved, lg->cert.achieved, diff.pi_prec()});
            if (!diff.is_zero() && valuation_pi(diff) < need)
                return fail(i, "log(exp(z)) != z for z = " + z.to_string());
            return {};
        })));

    // roundtrip: u in U^(2) => exp(log(u)) == u.
    rep.claims.push_back(fold(
        "roundtrip", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt x = random_element(
                p, M, RandomShape::in_m_pow, 2, sample_stream(seed, kTagRoundtrip, i));
            if (x.is_zero()) return {};  // u = 1 round-trips trivially
            const CycloElt u = one + x;
            std::string err;
            const auto lg = checked_log(x, best_log_target(p, valuation_pi(x), M), err);
            if (!lg) return fail(i, err);
            if (lg->value.is_zero())
                return fail(i, "log vanished on nontrivial u = " + u.to_string());
            const auto e = checked_exp(lg->value,
                                       best_exp_target(p, valuation_pi(lg->value),
                                                       lg->value.coeff_prec()),
                                       err);
            if (!e) return fail(i, err);
            const CycloElt diff = e->value - u;
            const long need =
                std::min({lg->cert.achieved, e->cert.achieved, diff.pi_prec()});
            if (!diff.is_zero() && valuation_pi(diff) < need)
                return fail(i, "exp(log(u)) != u for u = " + u.to_string());
            return {};
        })));

    // kernel: log(zeta^j) is exact zero for every j, and the reference
    // summation returns exact zero at full precision.
    {
        ClaimOutcome ker;
        ker.name = "kernel";
        for (long j = 0; j < p; ++j) {
            ++ker.checked;
            const CycloElt x = zeta.pow(static_cast<unsigned long>(j)) - one;
            if (j == 0) {
                if (!x.is_zero()) {
                    ++ker.failures;
                    ker.witnesses.push_back("j = 0: zeta^0 != 1");
                }
                continue;
            }
            const AnalyticResult lg = log1p(x, (p - 1) * M);
            const CycloElt ref = naive_log1p(x, lg.cert.n_max);
            if (!lg.value.is_zero() || !ref.is_zero()) {
                ++ker.failures;
                ker.witnesses.push_back("j = " + std::to_string(j) +
                                        ": log(zeta^j) is not exact zero");
            }
        }
        rep.claims.push_back(std::move(ker));
    }

    // splitting: log(u) == log(u2) across u = zeta^j * u2.
    rep.claims.push_back(fold(
        "splitting", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt x = random_element(
                p, M, RandomShape::in_m_pow, 1, sample_stream(seed, kTagSplitting, i));
            const CycloElt u = one + x;
            const SplitDecomposition s = split_U1(u);
            if (zeta.pow(static_cast<unsigned long>(s.j)) * s.u2 != u)
                return fail(i, "split does not reassemble u = " + u.to_string());
            if (x.is_zero()) return {};  // u = 1: both logs are exact zero
            std::string err;
            const auto l1 = checked_log(x, best_log_target(p, valuation_pi(x), M), err);
            if (!l1) return fail(i, err);
            const CycloElt x2 = s.u2 - one;
            if (x2.is_zero()) {
                // u is exactly a root of unity: its log must vanish.
                if (!l1->value.is_zero())
                    return fail(i, "log(zeta^j) != 0 for u = " + u.to_string());
                return {};
            }
            const auto l2 =
                checked_log(x2, best_log_target(p, valuation_pi(x2), M), err);
            if (!l2) return fail(i, err);
            const CycloElt diff = l1->value - l2->value;
            const long need =
                std::min({l1->cert.achieved, l2->cert.achieved, diff.pi_prec()});
            if (!diff.is_zero() && valuation_pi(diff) < need)
                return fail(i, "log(u) != log(u2) for u = " + u.to_string());
            return {};
        })));

    rep.pass = true;
    for (const ClaimOutcome& c : rep.claims) rep.pass = rep.pass && c.pass();
    return rep;
}

VerificationReport verify_annulus_image(long p, long M, long samples,
                                        uint64_t seed) {
    VerificationReport rep;
    rep.family = "annulus-log";
    rep.p = p;
    rep.M = M;
    rep.samples = samples;
    rep.seed = seed;

    const CycloElt one = CycloElt::one(p, M);
    const CycloElt zeta = CycloElt::zeta(p, M);
    const CycloElt pi2 = neg_p_root(p, M);

    // forward: the annulus maps into m^2.
    rep.claims.push_back(fold(
        "forward", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt u =
                random_element(p, M, RandomShape::annulus, 1,
                               sample_stream(seed, kTagAnnulusForward, i));
            const CycloElt x = u - one;
            if (valuation_pi(x) != 1)
                return fail(i, "sampler left the annulus: u = " + u.to_string());
            std::string err;
            const auto lg = checked_log(x, best_log_target(p, 1, M), err);
            if (!lg) return fail(i, err);
            if (!lg->value.is_zero() && valuation_pi(lg->value) < 2)
                return fail(i, "v_pi(log(u)) < 2 for u = " + u.to_string());
            return {};
        })));

    // backward: every z in m^2 has the annulus preimage zeta_p * exp(z).
    rep.claims.push_back(fold(
        "backward", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt z =
                random_element(p, M, RandomShape::in_m_pow, 2,
                               sample_stream(seed, kTagAnnulusBackward, i));
            CycloElt u = zeta;               // the z == 0 preimage
            long exp_achieved = (p - 1) * M; // exact in that case
            std::string err;
            if (!z.is_zero()) {
                const auto e =
                    checked_exp(z, best_exp_target(p, valuation_pi(z), M), err);
                if (!e) return fail(i, err);
                u = CycloElt::zeta(p, e->value.coeff_prec()) * e->value;
                exp_achieved = e->cert.achieved;
            }
            if (filtration_level(u) != 1)
                return fail(i, "preimage misses the annulus for z = " + z.to_string());
            if (split_U1(u).j != 1)
                return fail(i, "preimage splits with exponent != 1 for z = " +
                                   z.to_string());
            const CycloElt x = u - CycloElt::one(p, u.coeff_prec());
            const auto lg = checked_log(x, best_log_target(p, 1, u.coeff_prec()), err);
            if (!lg) return fail(i, err);
            const CycloElt diff = lg->value - z;
            const long need =
                std::min({exp_achieved, lg->cert.achieved, diff.pi_prec()});
            if (!diff.is_zero() && valuation_pi(diff) < need)
                return fail(i, "log(zeta * exp(z)) != z for z = " + z.to_string());
            return {};
        })));

    // solve: the algebraic route through the digit equation.
    rep.claims.push_back(fold(
        "solve", run_parallel(samples, [&](long i) -> SampleVerdict {
            const CycloElt y = random_element(
                p, M, RandomShape::unit, 0, sample_stream(seed, kTagSolve, i));
            const SolvePhiResult r = solve_phi(y, pi2, 0);
            if (r.status == SolveStatus::no_residue_solution) return skipped();
            const CycloElt rhs = pi2 * pi2 * y;

            // Empty string = the solution checks out.
            const auto validate = [&](const PhiSolution& sol) -> std::string {
                // Trace discipline: residuals sink strictly, the derivative
                // stays a unit with constant residue, digits are canonical.
                long deriv = -1;
                for (const LiftStep& st : sol.trace.steps) {
                    if (st.digit < 0 || st.digit >= p)
                        return "lift digit out of range";
                    if (st.residual_valuation < st.n + 1)
                        return "lift residual too shallow at step " +
                               std::to_string(st.n);
                    if (!st.taylor_ok)
                        return "Taylor identity failed at step " +
                               std::to_string(st.n);
                    if (deriv == -1) deriv = st.derivative_residue;
                    if (st.derivative_residue != deriv || deriv == 0)
                        return "derivative residue drifted at step " +
                               std::to_string(st.n);
                }
                if (!sol.trace.residual_exact_zero &&
                    sol.trace.final_residual_valuation < r.target)
                    return "lift stopped short of its target";
                if (valuation_pi(sol.x0) != 0 ||
                    residue_mod_pi(sol.x0) != sol.start_residue)
                    return "root does not extend its starting residue";
                std::string err;
                const auto lg = checked_log(pi2 * sol.x0, r.target + 2, err);
                if (!lg) return err;
                const CycloElt diff = lg->value - rhs;
                const long need =
                    std::min({lg->cert.achieved, r.target + 1, diff.pi_prec()});
                if (!diff.is_zero() && valuation_pi(diff) < need)
                    return "log(1 + pi2*x0) != pi2^2*y for y = " + y.to_string();
                return "";
            };

            SampleVerdict v;
            v.checked = static_cast<long>(r.solutions.size());
            for (const PhiSolution& sol : r.solutions) {
                const std::string msg = validate(sol);
                if (!msg.empty()) {
                    v.ok = false;
                    v.witness = "sample " + std::to_string(i) + ": " + msg;
                    break;
                }
            }
            return v;
        })));

    // coverage: the residue scan, recorded in full in the report.
    rep.coverage = residue_coverage_scan(p, M);
    {
        ClaimOutcome cov;
        cov.name = "coverage";
        cov.checked = 1;
        if (!rep.coverage.strictly_larger) {
            ++cov.failures;
            cov.witnesses.push_back(
                "two-digit residue coverage is not strictly larger");
        }
        rep.claims.push_back(std::move(cov));
    }

    rep.pass = true;
    for (const ClaimOutcome& c : rep.claims) rep.pass = rep.pass && c.pass();
    return rep;
}

CoverageScan residue_coverage_scan(long p, long M) {
    CoverageScan sc;
    sc.p = p;
    sc.single_witness.assign(static_cast<size_t>(p), "");
    sc.two_witness.assign(static_cast<size_t>(p), "");

    const CycloElt pi2 = neg_p_root(p, M);
    const CycloElt pi2sq = pi2 * pi2;

    const auto residue_of = [&](const CycloElt& v) -> long {
        std::string err;
        const auto lg = checked_log(pi2 * v, best_log_target(p, 1, M), err);
        if (!lg) throw lift_failure("residue scan: " + err);
        const CycloElt y = div_exact(lg->value, pi2sq);
        return residue_mod_pi(y);
    };

    for (long a = 1; a < p; ++a) {
        const long r = residue_of(CycloElt::from_integer(a, p, M));
        auto& slot = sc.single_witness[static_cast<size_t>(r)];
        if (slot.empty()) slot = "v = " + std::to_string(a);
    }
    for (long a = 1; a < p; ++a) {
        for (long b = 0; b < p; ++b) {
            const CycloElt v =
                CycloElt::from_integer(a, p, M) + pi2.mul_small(b);
            const long r = residue_of(v);
            auto& slot = sc.two_witness[static_cast<size_t>(r)];
            if (slot.empty())
                slot = "v = " + std::to_string(a) + " + " + std::to_string(b) +
                       "*pi2";
        }
    }

    for (long r = 0; r < p; ++r) {
        if (!sc.single_witness[static_cast<size_t>(r)].empty())
            sc.single_digit.push_back(r);
        if (!sc.two_witness[static_cast<size_t>(r)].empty())
            sc.two_digit.push_back(r);
    }
    sc.strictly_larger =
        sc.two_digit.size() > sc.single_digit.size() &&
        std::includes(sc.two_digit.begin(), sc.two_digit.end(),
                      sc.single_digit.begin(), sc.single_digit.end());
    return sc;
}

FlowReport flow_report(long p, long M, long samples, uint64_t seed) {
    FlowReport fr;
    fr.p = p;
    fr.M = M;
    fr.depth = (p - 1) * M;
    for (long i = 1; i <= fr.depth; ++i) {
        fr.unit_chain.push_back("U^(" + std::to_string(i) + ")");
        fr.ideal_chain.push_back("m^" + std::to_string(i));
    }

    const VerificationReport a = verify_log_bijection(p, M, samples, seed);
    const VerificationReport b = verify_annulus_image(p, M, samples, seed);

    fr.arrows.push_back(
        {"U^(1)", "m^2", "log",
         "image of the principal units is m^2; kernel is the p-th roots of unity",
         claim_passes(a, "forward") && claim_passes(a, "kernel")});
    fr.arrows.push_back({"m^2", "U^(2)", "exp",
                         "exp inverts log: log(exp(z)) == z and exp(log(u)) == u",
                         claim_passes(a, "backward") && claim_passes(a, "roundtrip")});
    fr.arrows.push_back({"U^(1)", "<zeta_p> x U^(2)", "split",
                         "unique factorization u = zeta_p^j * u2",
                         claim_passes(a, "splitting")});
    fr.arrows.push_back({"U^(1) \\ U^(2)", "m^2", "log",
                         "the annulus alone already covers m^2", b.pass});

    fr.pass = true;
    for (const FlowArrow& ar : fr.arrows) fr.pass = fr.pass && ar.verified;
    return fr;
}

} // namespace cyclog
