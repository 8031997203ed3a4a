// Benchmark: the production logarithm kernel driven by the OpenMP sample
// loop, the same kernel on one thread, and the single-threaded reference
// summation, all over identical inputs, with a cross-agreement verdict.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclog/analytic.hpp"
#include "cyclog/harness.hpp"
#include "cyclog/naive.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cyclog;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compare the parallel kernel, serial kernel, and reference"};
    long p = 5;
    long prec = 16;
    long samples = 1000;
    std::uint64_t seed = 42;
    app.add_option("--p", p, "odd prime >= 3 (default 5)");
    app.add_option("--prec", prec, "coefficient precision (default 16)");
    app.add_option("--samples", samples, "logarithms per pass (default 1000)");
    app.add_option("--seed", seed, "RNG seed (default 42)");
    CLI11_PARSE(app, argc, argv);

    // Shared inputs: principal units drawn from disjoint deterministic
    // streams, exactly as the verification harness draws them.
    std::vector<CycloElt> xs;
    xs.reserve(static_cast<size_t>(samples));
    for (long i = 0; i < samples; ++i) {
        CycloElt x = random_element(p, prec, RandomShape::in_m_pow, 1,
                                    sample_stream(seed, 1, i));
        if (x.is_zero()) x = CycloElt::pi(p, prec);  // keep the work uniform
        xs.push_back(std::move(x));
    }
    const long target = best_log_target(p, 1, prec);

    std::vector<CycloElt> par_vals;
    std::vector<long> par_nmax(static_cast<size_t>(samples), 0);
    std::vector<long> par_achieved(static_cast<size_t>(samples), 0);
    par_vals.reserve(static_cast<size_t>(samples));
    for (long i = 0; i < samples; ++i)
        par_vals.push_back(CycloElt::zero(p, prec));  // slots, overwritten

    const int threads = harness_threads();
    const auto t_par = Clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long i = 0; i < samples; ++i) {
        const AnalyticResult r = log1p(xs[static_cast<size_t>(i)], target);
        par_vals[static_cast<size_t>(i)] = r.value;
        par_nmax[static_cast<size_t>(i)] = r.cert.n_max;
        par_achieved[static_cast<size_t>(i)] = r.cert.achieved;
    }
    const double ms_par = ms_since(t_par);

    std::vector<CycloElt> ser_vals;
    ser_vals.reserve(static_cast<size_t>(samples));
    const auto t_ser = Clock::now();
    for (long i = 0; i < samples; ++i)
        ser_vals.push_back(log1p(xs[static_cast<size_t>(i)], target).value);
    const double ms_ser = ms_since(t_ser);

    std::vector<CycloElt> ref_vals;
    ref_vals.reserve(static_cast<size_t>(samples));
    const auto t_ref = Clock::now();
    for (long i = 0; i < samples; ++i)
        ref_vals.push_back(naive_log1p(xs[static_cast<size_t>(i)],
                                       par_nmax[static_cast<size_t>(i)]));
    const double ms_ref = ms_since(t_ref);

    long mismatches = 0;
    for (long i = 0; i < samples; ++i) {
        const size_t k = static_cast<size_t>(i);
        if (par_vals[k] != ser_vals[k]) ++mismatches;
        if (!naive_matches(ref_vals[k], par_vals[k], par_achieved[k]))
            ++mismatches;
    }

    std::printf("log kernel benchmark  p=%ld  prec=%ld  samples=%ld  seed=%llu\n",
                p, prec, samples, static_cast<unsigned long long>(seed));
    std::printf("  parallel kernel   (%d threads): %9.1f ms\n", threads, ms_par);
    std::printf("  serial kernel     (1 thread):   %9.1f ms  (x%.2f)\n", ms_ser,
                ms_par > 0 ? ms_ser / ms_par : 0.0);
    std::printf("  serial reference  (1 thread):   %9.1f ms  (x%.2f)\n", ms_ref,
                ms_par > 0 ? ms_ref / ms_par : 0.0);
    std::printf("  agreement: %s (%ld mismatches)\n",
                mismatches == 0 ? "PASS" : "FAIL", mismatches);
    return mismatches == 0 ? 0 : 1;
}
