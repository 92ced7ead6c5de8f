#pragma once

#include <stdexcept>
#include <string>

namespace t2dex {

/// Base class for faults raised while evaluating or integrating the model.
class NumericalFault : public std::runtime_error {
public:
    explicit NumericalFault(const std::string& what, double t = -1.0)
        : std::runtime_error(what), t_days(t) {}

    /// Simulation time at which the fault occurred, or -1 if not attached yet.
    double t_days;
};

/// A state component became NaN or infinite.
class NonFiniteState : public NumericalFault {
public:
    using NumericalFault::NumericalFault;
};

/// A state component crossed a physiological bound beyond tolerance.
class NegativeState : public NumericalFault {
public:
    using NumericalFault::NumericalFault;
};

/// Every candidate input in a period solve diverged.
class AllCandidatesDiverged : public NumericalFault {
public:
    using NumericalFault::NumericalFault;
};

/// Invalid configuration, parameter set, or operation precondition.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested session duration does not fit in one period.
/// Carries the feasible clamped duration so the caller can decide.
class InfeasibleDuration : public std::runtime_error {
public:
    InfeasibleDuration(const std::string& what, double requested, double clamped)
        : std::runtime_error(what),
          requested_minutes(requested),
          clamped_minutes(clamped) {}

    double requested_minutes;
    double clamped_minutes;
};

} // namespace t2dex
