#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// An adaptive scheme exhausted its subdivision budget. Carries the zone
/// that failed and the last error estimate reached.
struct ConvergenceFailure : Error {
    ConvergenceFailure(const std::string& zone_, double last_err_, const std::string& what_)
        : Error(what_), zone(zone_), last_err(last_err_) {}
    std::string zone;
    double last_err;
};

/// A pair integrand was declared with a non-integrable diagonal singularity.
struct SingularityError : Error {
    using Error::Error;
};

/// Rejection sampling acceptance fell below the safety floor.
struct SamplerFailure : Error {
    using Error::Error;
};

/// Too little usable data for a least-squares fit.
struct FitError : Error {
    using Error::Error;
};

struct UnknownPreset : Error {
    using Error::Error;
};

/// A declared decay envelope does not decay fast enough for the requested norm.
struct DivergenceWarning : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace fraclap
