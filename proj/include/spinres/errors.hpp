#pragma once

#include <stdexcept>
#include <string>

namespace spinres {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration or a request outside an operation's domain.
struct ConfigError : Error {
    using Error::Error;
};

// Numerical failure during evaluation.
struct NumericalError : Error {
    using Error::Error;
};

// Parameters sit on (or numerically indistinguishable from) a gap closing.
struct CriticalParametersError : NumericalError {
    using NumericalError::NumericalError;
};

// Quadrature could not reach the requested tolerance; carries the best estimate.
struct NonConvergenceError : NumericalError {
    NonConvergenceError(const std::string& msg, double best, double err)
        : NumericalError(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// Parameters lie on a phase boundary where a closed form is ambiguous.
struct AmbiguousPhaseError : ConfigError {
    using ConfigError::ConfigError;
};

// Requested quantity is undefined in the given phase.
struct PhaseError : ConfigError {
    using ConfigError::ConfigError;
};

// Requested problem size exceeds a hard capacity limit.
struct CapacityError : ConfigError {
    using ConfigError::ConfigError;
};

// Not enough data to perform the requested analysis.
struct InsufficientDataError : ConfigError {
    using ConfigError::ConfigError;
};

// A computed object violates an exact structural property beyond tolerance.
struct InternalConsistencyError : NumericalError {
    using NumericalError::NumericalError;
};

// Eigenvalue input does not describe a normalized spectrum.
struct NormalizationError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace spinres
