#pragma once

#include <vector>

#include "t2dex/model.hpp"

namespace t2dex {

/// Uniform integration grid; the integrator refines it with input breakpoints.
struct TimeGrid {
    double t0; ///< start [days]
    double t1; ///< end [days]
    double h;  ///< nominal step [days]

    void validate() const;
};

struct TrajectorySample {
    double t;      ///< days
    StateVector x; ///< state at t
    double u;      ///< input applied on [t, next sample)
};

/// Time-ordered record of states and the applied input.
using Trajectory = std::vector<TrajectorySample>;

/// Piecewise-constant, right-continuous input over time.
class InputSchedule {
public:
    static InputSchedule constant(double u);

    /// Appends a segment starting at t_start; starts must be strictly increasing.
    void add_segment(double t_start, double u);

    /// Input value at time t (value of the last segment starting at or before t).
    double value_at(double t) const;

    /// Segment start times strictly inside (t0, t1).
    std::vector<double> breakpoints_in(double t0, double t1) const;

    bool empty() const { return segments_.empty(); }
    double first_start() const { return segments_.front().t_start; }

private:
    struct Segment {
        double t_start;
        double u;
    };
    std::vector<Segment> segments_;
};

/// One classical RK4 step of size h under constant input u_eq.
/// Throws NonFiniteState / NegativeState on a faulted result; the
/// physiological bound check uses tolerance 1e-9 (no clamping).
StateVector step(const StateVector& x, double u_eq, double h, const ModelParams& p);

/// Throws NegativeState if x left the physiological set beyond tolerance
/// 1e-9, or NonFiniteState if any component is NaN/infinite.
void enforce_physiological(const StateVector& x);

/// Integrates x0 over grid under the schedule, sampling every grid point.
/// The grid is refined so every schedule breakpoint lands exactly on a
/// sample; input switches are never sampled mid-step. Faults are rethrown
/// with the offending time attached.
Trajectory integrate(const StateVector& x0, const InputSchedule& u,
                     const TimeGrid& grid, const ModelParams& p);

} // namespace t2dex
