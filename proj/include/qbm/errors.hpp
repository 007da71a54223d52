// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

// Invalid argument outside a function's mathematical domain (negative
// frequency, non-positive parameter, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// I(0) diverges like w^{s-1} for s<1; the value is integrable but not
// representable, callers must route through the singularity-aware quadrature.
struct IntegrableSingularity : DomainError {
    explicit IntegrableSingularity(const std::string& what) : DomainError(what) {}
};

// Adaptive quadrature failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double estimate, double error)
        : std::runtime_error(what + " (estimate=" + std::to_string(estimate) +
                             ", error=" + std::to_string(error) + ")"),
          estimate(estimate),
          achieved_error(error) {}
    double estimate;
    double achieved_error;
};

// Fringe-visibility denominator 2N+1 (or 4N+1) went non-positive.
struct RegimeValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// zeno_ratio with a vanishing Markovian rate.
struct DegenerateModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RootRefinementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock-space truncation violated (trace drift, state negativity, |beta|^2
// too large for the displaced-parity evaluation, step-size underflow).
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Negative Wigner peak value under the square root of the fringe formula.
struct UndefinedVisibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qbm
