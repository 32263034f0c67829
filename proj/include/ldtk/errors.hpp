#pragma once

#include <stdexcept>
#include <string>

namespace ldtk {

// A measure that cannot provide what an operation needs (tail quantiles,
// computable cell masses).
struct unsupported_measure_error : std::runtime_error {
    explicit unsupported_measure_error(const std::string& what) : std::runtime_error(what) {}
};

// Lifting a weight vector that charges a null cell of the base measure.
struct infeasible_lift_error : std::runtime_error {
    explicit infeasible_lift_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver stopped at its cap with the given residual.
struct optimizer_failure_error : std::runtime_error {
    optimizer_failure_error(const std::string& what, double residual_)
        : std::runtime_error(what), residual(residual_) {}
    double residual;
};

// An enumeration guard was exceeded.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldtk
