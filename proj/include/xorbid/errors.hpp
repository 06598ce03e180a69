#pragma once

#include <stdexcept>
#include <string>

namespace xorbid {

// Bad input data: out-of-range indices, NaN coefficients, inconsistent
// dimensions, broken invariants. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The solver could not deliver a result (numerical breakdown, iteration
// limit). CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Node limit hit during branch and bound; carries the best incumbent found
// so far and the proven bound on the optimum.
class ResourceLimitError : public SolverError {
public:
    ResourceLimitError(const std::string& what, bool has_incumbent,
                       double incumbent_objective, double best_bound)
        : SolverError(what),
          has_incumbent(has_incumbent),
          incumbent_objective(incumbent_objective),
          best_bound(best_bound) {}

    bool has_incumbent;
    double incumbent_objective;
    double best_bound;
};

// A provably-impossible internal state (e.g. a candidate selection whose
// value exceeds its own LP upper bound). Always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace xorbid
