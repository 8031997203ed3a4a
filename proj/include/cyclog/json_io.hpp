#pragma once

#include <string>

#include <json.hpp>

#include "cyclog/analytic.hpp"
#include "cyclog/cyclo.hpp"
#include "cyclog/harness.hpp"
#include "cyclog/hensel.hpp"
#include "cyclog/padic.hpp"
#include "cyclog/series.hpp"

namespace cyclog {

// JSON codecs for every value the command-line tool reads or writes.  All
// encoders use ordered maps and emit big integers as decimal strings, so a
// report serializes to the same bytes on every run and platform; decoders
// re-normalize through the ordinary constructors, so decode(encode(x)) == x
// bit-for-bit.  Every top-level object carries "schema_version": 1.
using Json = nlohmann::ordered_json;

inline constexpr long kSchemaVersion = 1;

Json encode_scalar(const PadicNumber& s);
PadicNumber decode_scalar(const Json& j);

// Element encoding: {"p", "prec", "coeffs": [scalar, ... length p-1]} with
// one scalar encoding per power-basis coordinate (p-adic integers).
Json encode_element(const CycloElt& x);
CycloElt decode_element(const Json& j);

// Sparse bivariate series encoding: {"D", "coeffs": [[i, j, scalar], ...]}
// listing only nonzero coefficients.  The decoder takes the prime and the
// coefficient precision from the entries themselves, so the list must be
// nonempty.
Json encode_series(const BivariateSeries& F);
BivariateSeries decode_series(const Json& j);

// Polynomial over O_K: {"coeffs": [element, ...]} with index = degree.
Json encode_polynomial(const OKPolynomial& f);
OKPolynomial decode_polynomial(const Json& j);

Json encode_digits(const DigitExpansion& d);
DigitExpansion decode_digits(const Json& j);

Json encode_cert(const PrecisionCert& c);
Json encode_analytic(const AnalyticResult& r);

Json encode_split(long j, const CycloElt& u2);

Json encode_trace(const LiftTrace& t);
Json encode_solve(const SolvePhiResult& r);

Json encode_coverage(const CoverageScan& c);
Json encode_report(const VerificationReport& r);
Json encode_flow(const FlowReport& f);

// Render a report/flow object as an aligned plain-text table (the --table
// output of the command-line tool).
std::string report_table(const VerificationReport& r);
std::string flow_table(const FlowReport& f);
std::string coverage_table(const CoverageScan& c);

} // namespace cyclog
