// Command-line entry point: element I/O, series tools, verification runs,
// and report emission.  Elements travel as JSON on stdin or via --in FILE;
// every output is JSON by default or a stable text table under --table.
// Exit codes: 0 success/PASS, 1 verification FAIL (or domain error), 2 usage.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cyclog/analytic.hpp"
#include "cyclog/errors.hpp"
#include "cyclog/filtration.hpp"
#include "cyclog/harness.hpp"
#include "cyclog/hensel.hpp"
#include "cyclog/json_io.hpp"
#include "cyclog/series.hpp"

using namespace cyclog;

namespace {

struct Opts {
    long p = 0;
    long prec = 0;
    long target = 0;
    long count = 4;
    long degree = 8;
    long samples = 200;
    long residue = -1;
    std::uint64_t seed = 42;
    std::string law = "multiplicative";
    std::string in;
    std::string poly;
    bool json = false;
    bool table = false;
};

Json parse_json_input(const std::string& path) {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw outside_domain("cannot open file: " + path);
    return Json::parse(f);
}

void require_odd_prime(long p) {
    bool ok = p >= 3 && p % 2 == 1;
    for (long d = 3; ok && d * d <= p; d += 2) ok = p % d != 0;
    if (!ok)
        throw CLI::ValidationError("--p", "p must be an odd prime >= 3");
}

void require_prec(long prec, long least, const char* why) {
    if (prec < least)
        throw CLI::ValidationError(
            "--prec", std::string(why) + " requires --prec >= " +
                          std::to_string(least));
}

void emit(const Opts& o, const Json& j, const std::string& tbl) {
    if (o.table && !tbl.empty())
        std::cout << tbl;
    else
        std::cout << j.dump(2) << "\n";
}

CycloElt load_element(const Opts& o) {
    const Json j = parse_json_input(o.in.empty() ? "-" : o.in);
    CycloElt x = decode_element(j);
    if (o.p != 0 && x.prime() != o.p)
        throw prime_mismatch("element prime " + std::to_string(x.prime()) +
                             " does not match --p " + std::to_string(o.p));
    if (o.prec != 0) {
        if (o.prec > x.coeff_prec())
            throw precision_exhausted(
                "element carries only coefficient precision " +
                std::to_string(x.coeff_prec()));
        if (o.prec < x.coeff_prec()) x = x.at_coeff_prec(o.prec);
    }
    return x;
}

// The trivial certificate for arguments where the series is the identity.
AnalyticResult exact_result(const CycloElt& value) {
    return AnalyticResult{value, PrecisionCert{value.pi_prec(), value.pi_prec(), 0}};
}

int cmd_log(const Opts& o) {
    const CycloElt u = load_element(o);
    const CycloElt x = u - CycloElt::one(u.prime(), u.coeff_prec());
    AnalyticResult r = x.is_zero()
                           ? exact_result(x)
                           : log1p(x, o.target > 0
                                          ? o.target
                                          : best_log_target(u.prime(),
                                                            valuation_pi(x),
                                                            x.coeff_prec()));
    std::string tbl = "log = " + r.value.to_string() + "\n" +
                      "cert: requested " + std::to_string(r.cert.requested) +
                      ", achieved " + std::to_string(r.cert.achieved) +
                      ", n_max " + std::to_string(r.cert.n_max) + "\n";
    emit(o, encode_analytic(r), tbl);
    return 0;
}

int cmd_exp(const Opts& o) {
    const CycloElt z = load_element(o);
    AnalyticResult r =
        z.is_zero()
            ? exact_result(CycloElt::one(z.prime(), z.coeff_prec()))
            : exp_map(z, o.target > 0
                             ? o.target
                             : best_exp_target(z.prime(), valuation_pi(z),
                                               z.coeff_prec()));
    std::string tbl = "exp = " + r.value.to_string() + "\n" +
                      "cert: requested " + std::to_string(r.cert.requested) +
                      ", achieved " + std::to_string(r.cert.achieved) +
                      ", n_max " + std::to_string(r.cert.n_max) + "\n";
    emit(o, encode_analytic(r), tbl);
    return 0;
}

int cmd_digits(const Opts& o) {
    const CycloElt x = load_element(o);
    const DigitExpansion d = pi_adic_digits(x, o.count);
    std::string tbl = "n0 = " + std::to_string(d.n0) + ", digits =";
    for (long g : d.digits) tbl += " " + std::to_string(g);
    tbl += "\n";
    emit(o, encode_digits(d), tbl);
    return 0;
}

int cmd_valuation(const Opts& o) {
    const CycloElt x = load_element(o);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "valuation";
    j["p"] = x.prime();
    j["exact_zero"] = x.is_zero();
    if (x.is_zero())
        j["v_pi"] = nullptr;
    else
        j["v_pi"] = valuation_pi(x);
    j["pi_prec"] = x.pi_prec();
    std::string tbl =
        x.is_zero() ? "v_pi = +infinity (exact zero)\n"
                    : "v_pi = " + std::to_string(valuation_pi(x)) + "\n";
    emit(o, j, tbl);
    return 0;
}

int cmd_split(const Opts& o) {
    const CycloElt u = load_element(o);
    const SplitDecomposition s = split_U1(u);
    std::string tbl = "j = " + std::to_string(s.j) + "\n" +
                      "u2 = " + s.u2.to_string() + "\n";
    emit(o, encode_split(s.j, s.u2), tbl);
    return 0;
}

int cmd_filtration(const Opts& o) {
    const CycloElt u = load_element(o);
    const long level = filtration_level(u);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "filtration";
    j["p"] = u.prime();
    std::string tbl;
    if (level == kPiValuationInfinity) {
        j["level"] = nullptr;
        tbl = "level = +infinity (u = 1)\n";
    } else {
        j["level"] = level;
        j["graded_class"] = graded_class(u, level);
        tbl = "level = " + std::to_string(level) + ", graded class = " +
              std::to_string(graded_class(u, level)) + "\n";
    }
    emit(o, j, tbl);
    return 0;
}

int cmd_fgl_check(const Opts& o) {
    std::string source = o.law;
    const BivariateSeries F = [&]() -> BivariateSeries {
        if (!o.in.empty()) {
            source = "file";
            BivariateSeries S = decode_series(parse_json_input(o.in));
            if (o.p != 0 && S.p != o.p)
                throw prime_mismatch("series prime " + std::to_string(S.p) +
                                     " does not match --p " + std::to_string(o.p));
            return S;
        }
        if (o.p == 0)
            throw CLI::ValidationError(
                "--p", "required unless --in supplies a series file");
        require_odd_prime(o.p);
        const long prec = o.prec > 0 ? o.prec : 10;
        require_prec(prec, 2, "fgl-check");
        if (o.degree < 2)
            throw CLI::ValidationError("--degree",
                                       "fgl-check requires --degree >= 2");
        if (o.law == "additive") return additive_law(o.p, prec, o.degree);
        if (o.law == "multiplicative")
            return multiplicative_law(o.p, prec, o.degree);
        throw CLI::ValidationError("--law",
                                   "law must be multiplicative or additive");
    }();

    const AxiomReport ax = verify_fgl_axioms(F);
    // The formal logarithm only exists for an actual group law; skip the
    // homomorphism check when an axiom already failed.
    bool hom = false;
    if (ax.pass()) {
        const TruncatedSeries L = formal_log(F);
        hom = is_homomorphism(L, F, additive_law(F.p, F.prec, F.D));
    }
    const bool pass = ax.pass() && hom;

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "fgl-check";
    j["source"] = source;
    j["p"] = F.p;
    j["degree"] = F.D;
    j["linear_part_ok"] = ax.linear_part_ok;
    j["identity_ok"] = ax.identity_ok;
    j["commutative_ok"] = ax.commutative_ok;
    j["associative_ok"] = ax.associative_ok;
    j["violations"] = ax.violations;
    if (ax.pass())
        j["log_is_homomorphism"] = hom;
    else
        j["log_is_homomorphism"] = nullptr;
    j["pass"] = pass;
    std::string tbl = source + " degree " + std::to_string(F.D) + ": axioms " +
                      (ax.pass() ? "PASS" : "FAIL") + ", log homomorphism " +
                      (ax.pass() ? (hom ? "PASS" : "FAIL") : "skipped") + "\n";
    for (const std::string& v : ax.violations) tbl += "  ! " + v + "\n";
    emit(o, j, tbl);
    return pass ? 0 : 1;
}

// Generic digit-by-digit root lifting: a polynomial file, a starting residue,
// and a certification target; the trace lists every iterate as a digit
// expansion along powers of pi1 = zeta - 1.
int cmd_lift_poly(const Opts& o) {
    const OKPolynomial f = decode_polynomial(parse_json_input(o.poly));
    const long p = f.coeffs.front().prime();
    if (o.p != 0 && p != o.p)
        throw prime_mismatch("polynomial prime " + std::to_string(p) +
                             " does not match --p " + std::to_string(o.p));
    if (o.residue < 0 || o.residue >= p)
        throw CLI::ValidationError("--residue",
                                   "starting residue must lie in [0, p)");
    if (o.target < 1)
        throw CLI::ValidationError("--target",
                                   "polynomial lifting requires --target >= 1");
    long prec = f.coeffs.front().coeff_prec();
    for (const CycloElt& c : f.coeffs) prec = std::min(prec, c.coeff_prec());
    const CycloElt x0 = CycloElt::from_integer(o.residue, p, prec);
    const CycloElt pi1 = CycloElt::pi(p, prec);
    const LiftResult r = newton_lift(f, x0, pi1, o.target);

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "lift";
    j["p"] = p;
    j["uniformizer"] = "pi1";
    j["start_residue"] = o.residue;
    j["target"] = o.target;
    j["root"] = encode_element(r.root);
    Json iterates = Json::array();
    std::vector<long> digits = {o.residue};
    iterates.push_back(encode_digits(DigitExpansion{0, digits}));
    for (const LiftStep& st : r.trace.steps) {
        digits.push_back(st.digit);
        iterates.push_back(encode_digits(DigitExpansion{0, digits}));
    }
    j["iterates"] = std::move(iterates);
    j["trace"] = encode_trace(r.trace);
    std::string tbl = "root = " + r.root.to_string() + "\n" + "digits =";
    for (long g : digits) tbl += " " + std::to_string(g);
    tbl += "\nfinal residual valuation >= " +
           std::to_string(r.trace.final_residual_valuation) +
           (r.trace.residual_exact_zero ? " (exact zero)" : "") + "\n";
    emit(o, j, tbl);
    return 0;
}

int cmd_lift(const Opts& o) {
    if (!o.poly.empty()) return cmd_lift_poly(o);
    const CycloElt y = load_element(o);
    const CycloElt pi2 = neg_p_root(y.prime(), y.coeff_prec());
    const SolvePhiResult r = solve_phi(y, pi2, o.target);
    std::string tbl;
    if (r.status == SolveStatus::no_residue_solution) {
        tbl = "no residue solution (solvable set is empty)\n";
    } else {
        tbl = "solvable residues:";
        for (long v : r.solvable_residues) tbl += " " + std::to_string(v);
        tbl += "\ntarget " + std::to_string(r.target) + ", degree " +
               std::to_string(r.degree) + "\n";
        for (const PhiSolution& s : r.solutions)
            tbl += "residue " + std::to_string(s.start_residue) +
                   " -> x0 = " + s.x0.to_string() + " (" +
                   std::to_string(s.trace.steps.size()) + " digit steps)\n";
    }
    emit(o, encode_solve(r), tbl);
    return 0;
}

int cmd_verify(const Opts& o, bool annulus) {
    require_odd_prime(o.p);
    const long prec = o.prec > 0 ? o.prec : 10;
    require_prec(prec, 4, "verification");
    const VerificationReport r =
        annulus ? verify_annulus_image(o.p, prec, o.samples, o.seed)
                : verify_log_bijection(o.p, prec, o.samples, o.seed);
    emit(o, encode_report(r), report_table(r));
    return r.pass ? 0 : 1;
}

int cmd_scan(const Opts& o) {
    require_odd_prime(o.p);
    const long prec = o.prec > 0 ? o.prec : 10;
    require_prec(prec, 4, "scan-residues");
    const CoverageScan c = residue_coverage_scan(o.p, prec);
    Json j = encode_coverage(c);
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "residue-coverage";
    emit(o, j, coverage_table(c));
    return c.strictly_larger ? 0 : 1;
}

int cmd_flow(const Opts& o) {
    require_odd_prime(o.p);
    const long prec = o.prec > 0 ? o.prec : 10;
    require_prec(prec, 4, "flow-report");
    const FlowReport f = flow_report(o.p, prec, o.samples, o.seed);
    emit(o, encode_flow(f), flow_table(f));
    return f.pass ? 0 : 1;
}

void add_format_flags(CLI::App* sub, Opts& o) {
    auto* jf = sub->add_flag("--json", o.json, "emit JSON (default)");
    sub->add_flag("--table", o.table, "emit a plain-text table")->excludes(jf);
}

void add_element_flags(CLI::App* sub, Opts& o) {
    sub->add_option("--p", o.p, "expected prime (cross-checked against input)");
    sub->add_option("--prec", o.prec,
                    "view the element at this coefficient precision");
    sub->add_option("--in", o.in, "read the element from FILE instead of stdin");
    add_format_flags(sub, o);
}

void add_run_flags(CLI::App* sub, Opts& o) {
    sub->add_option("--p", o.p, "odd prime >= 3")->required();
    sub->add_option("--prec", o.prec, "coefficient precision M (default 10)");
    sub->add_option("--samples", o.samples, "samples per claim (default 200)");
    sub->add_option("--seed", o.seed, "RNG seed (default 42)");
    add_format_flags(sub, o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for cyclotomic p-adic logarithms"};
    app.require_subcommand(1);
    Opts o;
    int rc = 0;

    auto* c_log = app.add_subcommand(
        "log", "logarithm of a principal unit u (reads u, computes log(u))");
    add_element_flags(c_log, o);
    c_log->add_option("--target", o.target, "requested pi-adic precision");
    c_log->callback([&] { rc = cmd_log(o); });

    auto* c_exp = app.add_subcommand("exp", "exponential of an element of m^2");
    add_element_flags(c_exp, o);
    c_exp->add_option("--target", o.target, "requested pi-adic precision");
    c_exp->callback([&] { rc = cmd_exp(o); });

    auto* c_dig = app.add_subcommand("digits", "pi-adic digit expansion");
    add_element_flags(c_dig, o);
    c_dig->add_option("--count", o.count, "digits to extract (default 4)");
    c_dig->callback([&] { rc = cmd_digits(o); });

    auto* c_val = app.add_subcommand("valuation", "pi-adic valuation");
    add_element_flags(c_val, o);
    c_val->callback([&] { rc = cmd_valuation(o); });

    auto* c_split = app.add_subcommand(
        "split", "factor a principal unit as zeta^j * u2 with u2 in U^(2)");
    add_element_flags(c_split, o);
    c_split->callback([&] { rc = cmd_split(o); });

    auto* c_filt = app.add_subcommand(
        "filtration", "unit filtration level and graded class");
    add_element_flags(c_filt, o);
    c_filt->callback([&] { rc = cmd_filtration(o); });

    auto* c_fgl = app.add_subcommand(
        "fgl-check", "verify formal group law axioms and the formal logarithm");
    c_fgl->add_option("--p", o.p, "odd prime >= 3 (required without --in)");
    c_fgl->add_option("--prec", o.prec, "coefficient precision (default 10)");
    c_fgl->add_option("--law", o.law, "multiplicative (default) or additive");
    c_fgl->add_option("--degree", o.degree, "truncation degree (default 8)");
    c_fgl->add_option("--in", o.in,
                      "check a series JSON file ('-' for stdin) instead of a "
                      "named law");
    add_format_flags(c_fgl, o);
    c_fgl->callback([&] { rc = cmd_fgl_check(o); });

    auto* c_lift = app.add_subcommand(
        "lift",
        "digit-lift a root: solve log(1 + pi2*x) = pi2^2*y (reads y), or lift "
        "a polynomial root with --poly/--residue");
    add_element_flags(c_lift, o);
    c_lift->add_option("--target", o.target,
                       "residual valuation to certify (default: adaptive)");
    c_lift->add_option("--poly", o.poly,
                       "polynomial JSON file ('-' for stdin); switches to "
                       "generic Newton lifting along pi1");
    c_lift->add_option("--residue", o.residue,
                       "starting residue in [0, p) for --poly mode");
    c_lift->callback([&] { rc = cmd_lift(o); });

    auto* c_v21 = app.add_subcommand(
        "verify-thm21", "verify log : U^(1) -> m^2 (kernel, splitting, inverse)");
    add_run_flags(c_v21, o);
    c_v21->callback([&] { rc = cmd_verify(o, false); });

    auto* c_v22 = app.add_subcommand(
        "verify-thm22", "verify log((1+m) \\ (1+m^2)) = m^2 (annulus image)");
    add_run_flags(c_v22, o);
    c_v22->callback([&] { rc = cmd_verify(o, true); });

    auto* c_scan = app.add_subcommand(
        "scan-residues", "residue coverage of y(v) = log(1 + pi2*v)/pi2^2");
    c_scan->add_option("--p", o.p, "odd prime >= 3")->required();
    c_scan->add_option("--prec", o.prec, "coefficient precision (default 10)");
    c_scan->add_option("--samples", o.samples,
                       "accepted for flag uniformity; the scan is exhaustive");
    c_scan->add_option("--seed", o.seed,
                       "accepted for flag uniformity; the scan is exhaustive");
    add_format_flags(c_scan, o);
    c_scan->callback([&] { rc = cmd_scan(o); });

    auto* c_flow = app.add_subcommand(
        "flow-report", "containment chains with verified arrows");
    add_run_flags(c_flow, o);
    c_flow->callback([&] { rc = cmd_flow(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cyclog::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
