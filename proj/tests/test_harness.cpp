#include <doctest.h>

#include <cstdlib>

#include "cyclog/harness.hpp"
#include "cyclog/json_io.hpp"

using namespace cyclog;

namespace {

const ClaimOutcome& claim(const VerificationReport& r, const char* name) {
    for (const ClaimOutcome& c : r.claims)
        if (c.name == name) return c;
    REQUIRE(false);
    return r.claims.front();
}

} // namespace

TEST_CASE("principal-units run passes with zero failures") {
    for (long p : {3L, 5L}) {
        CAPTURE(p);
        const VerificationReport r = verify_log_bijection(p, 10, 40, 7);
        CHECK(r.pass);
        CHECK(r.family == "principal-units-log");
        REQUIRE(r.claims.size() == 5);
        CHECK(claim(r, "forward").checked == 40);
        CHECK(claim(r, "backward").checked == 40);
        CHECK(claim(r, "roundtrip").checked == 40);
        CHECK(claim(r, "kernel").checked == p);
        CHECK(claim(r, "splitting").checked == 40);
        for (const ClaimOutcome& c : r.claims) {
            CAPTURE(c.name);
            CHECK(c.failures == 0);
            CHECK(c.witnesses.empty());
        }
    }
}

TEST_CASE("annulus run passes and tabulates coverage") {
    const VerificationReport r = verify_annulus_image(5, 10, 40, 42);
    CHECK(r.pass);
    CHECK(r.family == "annulus-log");
    REQUIRE(r.claims.size() == 4);
    CHECK(claim(r, "forward").checked == 40);
    CHECK(claim(r, "backward").checked == 40);
    // Only samples whose digit equation is solvable count; with unit first
    // digits uniform, roughly (p-1)/2 of p-1 residues admit solutions.
    CHECK(claim(r, "solve").checked > 0);
    CHECK(claim(r, "solve").failures == 0);
    CHECK(claim(r, "coverage").pass());

    // The recorded scan: single Teichmueller digits reach exactly {2, 3}
    // (the -v^2/2 values at p = 5); two digits reach every residue.
    CHECK(r.coverage.p == 5);
    CHECK(r.coverage.single_digit == std::vector<long>{2, 3});
    CHECK(r.coverage.two_digit == std::vector<long>{0, 1, 2, 3, 4});
    CHECK(r.coverage.strictly_larger);
    CHECK(r.coverage.single_witness[2] == "v = 1");
    CHECK(r.coverage.two_witness[0].rfind("v = ", 0) == 0);
}

TEST_CASE("annulus run passes for the other desk-scale primes") {
    for (long p : {3L, 7L}) {
        CAPTURE(p);
        const VerificationReport r = verify_annulus_image(p, 10, 30, 11);
        CHECK(r.pass);
        CHECK(claim(r, "solve").checked > 0);
    }
}

TEST_CASE("residue scan values match the closed form -v^2/2 mod p") {
    // p = 3: -1/2 = 1 on both unit digits -> {1}; richer v reach all.
    const CoverageScan s3 = residue_coverage_scan(3, 10);
    CHECK(s3.single_digit == std::vector<long>{1});
    CHECK(s3.two_digit == std::vector<long>{0, 1, 2});
    CHECK(s3.strictly_larger);

    // p = 7: squares are {1, 2, 4}, -1/2 = 3, so the set is {3, 6, 5}.
    const CoverageScan s7 = residue_coverage_scan(7, 10);
    CHECK(s7.single_digit == std::vector<long>{3, 5, 6});
    CHECK(s7.two_digit == std::vector<long>{0, 1, 2, 3, 4, 5, 6});
    CHECK(s7.strictly_larger);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const std::string first =
        encode_report(verify_annulus_image(3, 10, 25, 1234)).dump();

    setenv("PADIC_FORMAL_THREADS", "1", 1);
    CHECK(harness_threads() == 1);
    const std::string serial =
        encode_report(verify_annulus_image(3, 10, 25, 1234)).dump();
    unsetenv("PADIC_FORMAL_THREADS");

    const std::string again =
        encode_report(verify_annulus_image(3, 10, 25, 1234)).dump();

    CHECK(first == serial);
    CHECK(first == again);

    const std::string other =
        encode_report(verify_annulus_image(3, 10, 25, 1235)).dump();
    CHECK(first != other);
}

TEST_CASE("sample streams are deterministic and claim-disjoint") {
    CHECK(sample_stream(42, 1, 0) == sample_stream(42, 1, 0));
    CHECK(sample_stream(42, 1, 0) != sample_stream(42, 2, 0));
    CHECK(sample_stream(42, 1, 0) != sample_stream(42, 1, 1));
    CHECK(sample_stream(42, 1, 0) != sample_stream(43, 1, 0));
}

TEST_CASE("thread cap honors the environment variable") {
    setenv("PADIC_FORMAL_THREADS", "1", 1);
    CHECK(harness_threads() == 1);
    setenv("PADIC_FORMAL_THREADS", "garbage", 1);
    const int fallback = harness_threads();
    unsetenv("PADIC_FORMAL_THREADS");
    CHECK(fallback == harness_threads());
    CHECK(harness_threads() >= 1);
}

TEST_CASE("flow report assembles verified arrows over full-depth chains") {
    const FlowReport f = flow_report(3, 8, 20, 5);
    CHECK(f.p == 3);
    CHECK(f.depth == 16);
    CHECK(f.unit_chain.size() == 16);
    CHECK(f.ideal_chain.size() == 16);
    CHECK(f.unit_chain.front() == "U^(1)");
    CHECK(f.ideal_chain.front() == "m^1");
    CHECK(f.unit_chain.back() == "U^(16)");
    REQUIRE(f.arrows.size() == 4);
    for (const FlowArrow& a : f.arrows) {
        CAPTURE(a.label);
        CHECK(a.verified);
        CHECK_FALSE(a.statement.empty());
    }
    CHECK(f.pass);
}
