#include "cyclog/json_io.hpp"

#include <sstream>

#include "cyclog/errors.hpp"

namespace cyclog {

namespace {

std::string mpz_str(const mpz_class& v) { return v.get_str(); }

mpz_class str_mpz(const Json& j) { return mpz_class(j.get<std::string>(), 10); }

const char* pass_str(bool b) { return b ? "PASS" : "FAIL"; }

std::string set_str(const std::vector<long>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

} // namespace

Json encode_scalar(const PadicNumber& s) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "scalar";
    j["p"] = s.prime();
    j["prec"] = s.precision();
    if (s.is_zero()) {
        j["zero"] = true;
    } else {
        j["val"] = s.valuation();
        j["unit"] = mpz_str(s.unit_part());
    }
    return j;
}

PadicNumber decode_scalar(const Json& j) {
    const long p = j.at("p").get<long>();
    const long prec = j.at("prec").get<long>();
    if (j.value("zero", false)) return PadicNumber::zero(p, prec);
    return PadicNumber::from_parts(p, prec, j.at("val").get<long>(),
                                   str_mpz(j.at("unit")));
}

Json encode_element(const CycloElt& x) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "element";
    j["p"] = x.prime();
    j["prec"] = x.coeff_prec();
    Json coeffs = Json::array();
    for (const mpz_class& c : x.coords())
        coeffs.push_back(
            encode_scalar(PadicNumber::from_integer(c, x.prime(), x.coeff_prec())));
    j["coeffs"] = std::move(coeffs);
    return j;
}

CycloElt decode_element(const Json& j) {
    const long p = j.at("p").get<long>();
    const long cprec = j.at("prec").get<long>();
    std::vector<mpz_class> coords;
    for (const Json& cj : j.at("coeffs")) {
        const PadicNumber s = decode_scalar(cj);
        if (s.prime() != p)
            throw prime_mismatch("element coefficient encoded at prime " +
                                 std::to_string(s.prime()) + ", element claims " +
                                 std::to_string(p));
        if (s.is_zero()) {
            coords.emplace_back(0);
            continue;
        }
        if (s.valuation() < 0)
            throw outside_domain(
                "element coefficients must be p-adic integers (valuation " +
                std::to_string(s.valuation()) + " < 0)");
        if (s.precision() < cprec)
            throw precision_exhausted(
                "element coefficient known to " + std::to_string(s.precision()) +
                " digits, element claims " + std::to_string(cprec));
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(s.valuation()));
        coords.push_back(s.unit_part() * pw);
    }
    return CycloElt(p, cprec, std::move(coords));
}

Json encode_series(const BivariateSeries& F) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "series";
    j["D"] = F.D;
    Json coeffs = Json::array();
    for (long i = 0; i <= F.D; ++i)
        for (long k = 0; i + k <= F.D; ++k) {
            if (F.at(i, k).is_zero()) continue;
            coeffs.push_back(Json::array({i, k, encode_scalar(F.at(i, k))}));
        }
    j["coeffs"] = std::move(coeffs);
    return j;
}

BivariateSeries decode_series(const Json& j) {
    const long D = j.at("D").get<long>();
    const Json& coeffs = j.at("coeffs");
    if (coeffs.empty())
        throw error("series encoding carries no coefficients; the prime and "
                    "precision cannot be inferred");
    const PadicNumber first = decode_scalar(coeffs.at(0).at(2));
    BivariateSeries F = BivariateSeries::zeros(first.prime(), first.precision(), D);
    for (const Json& entry : coeffs) {
        const long i = entry.at(0).get<long>();
        const long k = entry.at(1).get<long>();
        if (i < 0 || k < 0 || i + k > D)
            throw error("series coefficient index (" + std::to_string(i) + ", " +
                        std::to_string(k) + ") is outside degree " +
                        std::to_string(D));
        const PadicNumber s = decode_scalar(entry.at(2));
        if (s.prime() != F.p)
            throw prime_mismatch("series coefficients mix primes " +
                                 std::to_string(F.p) + " and " +
                                 std::to_string(s.prime()));
        F.set(i, k, s);
    }
    return F;
}

Json encode_polynomial(const OKPolynomial& f) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "polynomial";
    Json coeffs = Json::array();
    for (const CycloElt& c : f.coeffs) coeffs.push_back(encode_element(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

OKPolynomial decode_polynomial(const Json& j) {
    OKPolynomial f;
    for (const Json& c : j.at("coeffs")) f.coeffs.push_back(decode_element(c));
    if (f.coeffs.empty())
        throw error("polynomial encoding carries no coefficients");
    long p = f.coeffs.front().prime();
    for (const CycloElt& c : f.coeffs)
        if (c.prime() != p)
            throw prime_mismatch("polynomial coefficients mix primes");
    return f;
}

Json encode_digits(const DigitExpansion& d) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "digits";
    j["n0"] = d.n0;
    j["digits"] = d.digits;
    return j;
}

DigitExpansion decode_digits(const Json& j) {
    DigitExpansion d;
    d.n0 = j.at("n0").get<long>();
    d.digits = j.at("digits").get<std::vector<long>>();
    return d;
}

Json encode_cert(const PrecisionCert& c) {
    Json j;
    j["requested"] = c.requested;
    j["achieved"] = c.achieved;
    j["n_max"] = c.n_max;
    return j;
}

Json encode_analytic(const AnalyticResult& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "series-value";
    j["value"] = encode_element(r.value);
    j["exact_zero"] = r.value.is_zero();
    j["cert"] = encode_cert(r.cert);
    return j;
}

Json encode_split(long jexp, const CycloElt& u2) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "split";
    j["j"] = jexp;
    j["u2"] = encode_element(u2);
    return j;
}

Json encode_trace(const LiftTrace& t) {
    Json j;
    Json steps = Json::array();
    for (const LiftStep& s : t.steps) {
        Json st;
        st["n"] = s.n;
        st["digit"] = s.digit;
        st["residual_valuation"] = s.residual_valuation;
        st["taylor_ok"] = s.taylor_ok;
        st["derivative_residue"] = s.derivative_residue;
        steps.push_back(std::move(st));
    }
    j["steps"] = std::move(steps);
    j["final_residual_valuation"] = t.final_residual_valuation;
    j["residual_exact_zero"] = t.residual_exact_zero;
    return j;
}

Json encode_solve(const SolvePhiResult& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "annulus-solve";
    j["status"] = r.status == SolveStatus::solved ? "solved" : "no-residue-solution";
    j["solvable_residues"] = r.solvable_residues;
    j["target"] = r.target;
    j["degree"] = r.degree;
    Json sols = Json::array();
    for (const PhiSolution& s : r.solutions) {
        Json sj;
        sj["start_residue"] = s.start_residue;
        sj["x0"] = encode_element(s.x0);
        sj["trace"] = encode_trace(s.trace);
        sols.push_back(std::move(sj));
    }
    j["solutions"] = std::move(sols);
    return j;
}

Json encode_coverage(const CoverageScan& c) {
    Json j;
    j["p"] = c.p;
    j["single_digit"] = c.single_digit;
    j["two_digit"] = c.two_digit;
    Json sw = Json::object();
    Json tw = Json::object();
    for (long r = 0; r < c.p; ++r) {
        const auto& s1 = c.single_witness[static_cast<size_t>(r)];
        const auto& s2 = c.two_witness[static_cast<size_t>(r)];
        if (!s1.empty()) sw[std::to_string(r)] = s1;
        if (!s2.empty()) tw[std::to_string(r)] = s2;
    }
    j["single_witness"] = std::move(sw);
    j["two_witness"] = std::move(tw);
    j["strictly_larger"] = c.strictly_larger;
    return j;
}

Json encode_report(const VerificationReport& r) {
    Json j;
    j["schema_version"] = r.schema_version;
    j["kind"] = "verification-report";
    j["family"] = r.family;
    j["p"] = r.p;
    j["M"] = r.M;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    Json claims = Json::array();
    for (const ClaimOutcome& c : r.claims) {
        Json cj;
        cj["name"] = c.name;
        cj["checked"] = c.checked;
        cj["failures"] = c.failures;
        cj["witnesses"] = c.witnesses;
        cj["pass"] = c.pass();
        claims.push_back(std::move(cj));
    }
    j["claims"] = std::move(claims);
    if (r.coverage.p != 0) j["coverage"] = encode_coverage(r.coverage);
    j["pass"] = r.pass;
    return j;
}

Json encode_flow(const FlowReport& f) {
    Json j;
    j["schema_version"] = f.schema_version;
    j["kind"] = "flow-report";
    j["p"] = f.p;
    j["M"] = f.M;
    j["depth"] = f.depth;
    j["unit_chain"] = f.unit_chain;
    j["ideal_chain"] = f.ideal_chain;
    Json arrows = Json::array();
    for (const FlowArrow& a : f.arrows) {
        Json aj;
        aj["from"] = a.from;
        aj["to"] = a.to;
        aj["label"] = a.label;
        aj["statement"] = a.statement;
        aj["verified"] = a.verified;
        arrows.push_back(std::move(aj));
    }
    j["arrows"] = std::move(arrows);
    j["pass"] = f.pass;
    return j;
}

std::string report_table(const VerificationReport& r) {
    std::ostringstream os;
    os << "family: " << r.family << "  p=" << r.p << "  M=" << r.M
       << "  samples=" << r.samples << "  seed=" << r.seed << "\n";
    os << "claim        checked  failures  verdict\n";
    for (const ClaimOutcome& c : r.claims) {
        os << c.name;
        for (size_t k = c.name.size(); k < 13; ++k) os << ' ';
        std::string chk = std::to_string(c.checked);
        os << chk;
        for (size_t k = chk.size(); k < 9; ++k) os << ' ';
        std::string fl = std::to_string(c.failures);
        os << fl;
        for (size_t k = fl.size(); k < 10; ++k) os << ' ';
        os << pass_str(c.pass()) << "\n";
        for (const std::string& w : c.witnesses) os << "    ! " << w << "\n";
    }
    if (r.coverage.p != 0) os << coverage_table(r.coverage);
    os << "overall: " << pass_str(r.pass) << "\n";
    return os.str();
}

std::string coverage_table(const CoverageScan& c) {
    std::ostringstream os;
    os << "residue coverage (p=" << c.p << ")\n";
    os << "residue  single-digit     two-digit\n";
    for (long r = 0; r < c.p; ++r) {
        const auto& s1 = c.single_witness[static_cast<size_t>(r)];
        const auto& s2 = c.two_witness[static_cast<size_t>(r)];
        std::string rs = std::to_string(r);
        os << rs;
        for (size_t k = rs.size(); k < 9; ++k) os << ' ';
        std::string w1 = s1.empty() ? "-" : s1;
        os << w1;
        for (size_t k = w1.size(); k < 17; ++k) os << ' ';
        os << (s2.empty() ? "-" : s2) << "\n";
    }
    os << "single set " << set_str(c.single_digit) << "  two-digit set "
       << set_str(c.two_digit)
       << "  strictly larger: " << (c.strictly_larger ? "yes" : "no") << "\n";
    return os.str();
}

std::string flow_table(const FlowReport& f) {
    std::ostringstream os;
    os << "containment flow  p=" << f.p << "  M=" << f.M
       << "  depth=" << f.depth << "\n";
    os << "units:  ";
    for (long i = 0; i < f.depth && i < 4; ++i) {
        if (i) os << " > ";
        os << f.unit_chain[static_cast<size_t>(i)];
    }
    os << " > ... (" << f.depth << " levels)\n";
    os << "ideals: ";
    for (long i = 0; i < f.depth && i < 4; ++i) {
        if (i) os << " > ";
        os << f.ideal_chain[static_cast<size_t>(i)];
    }
    os << " > ... (" << f.depth << " levels)\n";
    for (const FlowArrow& a : f.arrows) {
        os << "  " << a.label << ": " << a.from << " -> " << a.to << "  ["
           << (a.verified ? "verified" : "NOT VERIFIED") << "]  " << a.statement
           << "\n";
    }
    os << "overall: " << pass_str(f.pass) << "\n";
    return os.str();
}

} // namespace cyclog
