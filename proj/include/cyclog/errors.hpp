#pragma once

#include <stdexcept>
#include <string>

namespace cyclog {

// Base class for every domain error raised by this library.  Callers that
// want blanket handling catch cyclog::error; callers that care about the
// failure mode catch the concrete type.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// The requested operation would produce a value known to zero or negative
// precision (every stored digit was consumed by divisions).
struct precision_exhausted : error {
    explicit precision_exhausted(const std::string& what) : error(what) {}
};

// Division by an element that is zero at its stored precision.
struct division_by_zero : error {
    explicit division_by_zero(const std::string& what) : error(what) {}
};

// A residue lies outside the expected canonical range.
struct invalid_residue : error {
    explicit invalid_residue(const std::string& what) : error(what) {}
};

// The prime is not an odd prime >= 3.
struct unsupported_prime : error {
    explicit unsupported_prime(const std::string& what) : error(what) {}
};

// Two operands live over different primes.
struct prime_mismatch : error {
    explicit prime_mismatch(const std::string& what) : error(what) {}
};

// An exact division (by p or by a power of the uniformizer) hit an element
// that is not divisible; the quotient would leave the ring of integers.
struct not_divisible : error {
    explicit not_divisible(const std::string& what) : error(what) {}
};

// Inversion was requested for a non-unit.
struct not_a_unit : error {
    explicit not_a_unit(const std::string& what) : error(what) {}
};

// The argument lies outside the convergence/definition domain of the map.
struct outside_domain : error {
    explicit outside_domain(const std::string& what) : error(what) {}
};

// A formal-group evaluation was attempted at a point that is not in the
// maximal ideal, where the series does not converge.
struct outside_maximal_ideal : error {
    explicit outside_maximal_ideal(const std::string& what) : error(what) {}
};

// A principal-unit decomposition was requested for an element that is not
// congruent to 1 modulo the maximal ideal.
struct not_in_u1 : error {
    explicit not_in_u1(const std::string& what) : error(what) {}
};

// Newton lifting requires a simple root: residual not vanishing to higher
// order than the derivative allows, derivative a unit at the start point.
struct simple_root_violation : error {
    explicit simple_root_violation(const std::string& what) : error(what) {}
};

// A digit-by-digit lift stopped making progress (residual valuation failed
// to increase), which indicates a malformed equation rather than bad data.
struct stall_detected : error {
    explicit stall_detected(const std::string& what) : error(what) {}
};

// A lift whose solvability was already established could not be completed;
// this is an internal-consistency failure, never a data error.
struct lift_failure : error {
    explicit lift_failure(const std::string& what) : error(what) {}
};

} // namespace cyclog
