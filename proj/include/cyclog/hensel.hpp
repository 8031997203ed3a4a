#pragma once

#include <vector>

#include "cyclog/analytic.hpp"
#include "cyclog/cyclo.hpp"

namespace cyclog {

// A polynomial over O_K (coefficient of t^n at index n).  Coefficients may
// carry different precisions; evaluation folds to the minimum.
struct OKPolynomial {
    std::vector<CycloElt> coeffs;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    CycloElt eval(const CycloElt& x) const;
    OKPolynomial derivative() const;
};

// One digit step of the lift x_{n+1} = x_n + pi^(n+1) z_{n+1}.
struct LiftStep {
    long n;                  // step index (digit position n+1 was fixed)
    long digit;              // z_{n+1} in 0..p-1
    long residual_valuation; // v_pi(f(x_n)) observed before the step
    bool taylor_ok;          // f(x + pi^(n+1) z) == f(x) + pi^(n+1) z f'(x) mod pi^(2n+2)
    long derivative_residue; // f'(x_n) mod pi (must stay constant)
};

struct LiftTrace {
    std::vector<LiftStep> steps;
    long final_residual_valuation = 0; // certified lower bound at exit
    bool residual_exact_zero = false;  // residual vanished at stored precision
};

struct LiftResult {
    CycloElt root;
    LiftTrace trace;
};

// Digit-by-digit Hensel-Newton lift along powers of `uniformizer`: starting
// from x0 with v_pi(f(x0)) >= 1 and f'(x0) a unit (else
// simple_root_violation), each step appends the digit
//
//     z_{n+1} = -f(x_n) / (pi^(n+1) f'(x_n))  mod pi
//
// and the residual valuation must strictly increase (else stall_detected).
// Runs until v_pi(f(x_n)) > target.  The per-step Taylor identity and the
// constancy of f'(x_n) mod pi are checked numerically and recorded.
LiftResult newton_lift(const OKPolynomial& f, const CycloElt& x0,
                       const CycloElt& uniformizer, long target);

// The equation family for inverting the logarithm on the annulus: for a
// target y and the distinguished uniformizer pi2 (pi2^(p-1) = -p), the
// series
//
//     phi(t) = -y - t^2/2 + pi2 t^3/3 - pi2^2 t^4/4 + ...
//
// with coefficient (-1)^(n-1) pi2^(n-2) / n at t^n for n >= 2, except that
// the t^p slot is empty: its coefficient pi2^(p-2)/p is not integral on its
// own, and the identity pi2^p/p = -pi2 moves that term into the linear part
// of the integral lift equation below.
struct PhiSeries {
    long p;
    long D;
    CycloElt y;
    CycloElt pi2;
    std::vector<CycloElt> tail; // index n-2 holds the coefficient of t^n; zero at n = p

    // The O_K-integral lift target H with
    //
    //     log(1 + pi2 t) = pi2 * (H(t) + pi2 y)   identically, so
    //     H(t) = -pi2 y + t - t^p + sum_{n>=2, n != p} (-1)^(n-1) pi2^(n-1) t^n / n.
    //
    // H has unit derivative == 1 mod pi at every unit argument and vanishing
    // residue there (t - t^p == 0 on the residue field), so it is exactly the
    // equation newton_lift needs; the degree extends to >= p so the absorbed
    // t^p term is present.
    OKPolynomial lift_equation() const;
};

// Builds the series above with the tail truncated at degree D by the same
// effective-bound machinery the logarithm uses.
PhiSeries build_phi(const CycloElt& y, const CycloElt& pi2, long D);

enum class SolveStatus { solved, no_residue_solution };

struct PhiSolution {
    long start_residue; // v with y == -v^2/2 mod pi
    CycloElt x0;        // unit root: log(1 + pi2 x0) = pi2^2 y
    LiftTrace trace;
};

struct SolvePhiResult {
    SolveStatus status;
    std::vector<long> solvable_residues; // the full set, not just the first hit
    std::vector<PhiSolution> solutions;  // one lift per solvable residue
    long target;                         // residual valuation the lifts certify
    long degree;                         // tail truncation degree used
};

// Solves log(1 + pi2 x) = pi2^2 y for a unit x: scans all p-1 starting
// residues v against the solvability condition y == -v^2/2 mod pi, reports
// the full solvable set, and digit-lifts one root per admissible residue.
// status == no_residue_solution (with empty solutions) when the scan comes
// up empty; that outcome is data, not an error.
SolvePhiResult solve_phi(const CycloElt& y, const CycloElt& pi2, long target);

} // namespace cyclog
