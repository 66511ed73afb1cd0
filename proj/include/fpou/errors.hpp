#pragma once

#include <stdexcept>
#include <string>

namespace fpou {

// Adaptive integration ran out of refinement budget. Carries the best
// available estimate and a bound on its error so callers can decide
// whether the partial result is still usable.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, double best, double error_bound)
        : std::runtime_error(what), best_estimate(best), bound(error_bound) {}

    double best_estimate;
    double bound;
};

// Binary cache file is malformed, truncated, or does not match the
// parameters it was requested for.
class FormatError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested problem size exceeds the dense-table budget.
class ResourceLimitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimator denominator vanished; the path carries no signal.
class DegeneratePathError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ingested data fails a structural precondition (off-lattice values,
// bad CSV layout, ...).
class CorruptedInputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Triangular solve hit a zero diagonal; cannot happen for valid tables.
class SingularMatrixError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fpou
