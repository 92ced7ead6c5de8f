#pragma once

#include <utility>
#include <vector>

#include "t2dex/integrator.hpp"

namespace t2dex {

/// Derivative-free scalar optimizer settings for the period solve.
struct SolverSettings {
    int grid_points = 61;   ///< coarse scan resolution over [0, u_eq_max]
    double tol = 1e-4;      ///< golden-section bracket width at termination
    double h = 0.01;        ///< prediction integration step [days]
};

/// Receding-horizon controller configuration.
struct ControllerConfig {
    int N;             ///< prediction window, in control periods
    double T;          ///< control period [days]
    double lambda;     ///< input penalty weight
    double u_eq_max;   ///< upper input bound
    SolverSettings solver;

    void validate() const;
};

/// Outcome of one period solve.
struct ControlDecision {
    int k;                  ///< period index
    double t_apply;         ///< days
    double u_eq_star;       ///< minimizer over [0, u_eq_max]
    double cost_star;       ///< objective at the minimizer
    std::vector<std::pair<double, double>> cost_curve; ///< coarse (u, cost) samples
    int diverged_candidates = 0; ///< candidates excluded via the +inf sentinel
};

struct ClosedLoopResult {
    Trajectory trajectory;
    std::vector<ControlDecision> decisions;
};

/// Predicted cost of holding u_eq constant for N*T days from x_k:
/// the integral of G^2 + lambda*u_eq^2, composite trapezoid on the RK4 grid.
/// A candidate whose prediction faults numerically receives +infinity.
double horizon_cost(const StateVector& x_k, double u_eq,
                    const ControllerConfig& cfg, const ModelParams& p);

/// Minimizes horizon_cost over [0, u_eq_max]: coarse grid scan followed by
/// golden-section refinement on the best bracket. Ties break toward the
/// smaller input. Throws AllCandidatesDiverged if every sample is +inf.
ControlDecision solve_period(const StateVector& x_k, const ControllerConfig& cfg,
                             const ModelParams& p, int k = 0, double t_apply = 0.0);

/// Receding horizon over `duration` days: at each t = kT solve from the
/// current state, hold the optimal input for one period, repeat. `h_sim` is
/// the closed-loop integration step.
ClosedLoopResult run_closed_loop(const StateVector& x0, const ControllerConfig& cfg,
                                 const ModelParams& p, double duration,
                                 double h_sim = 0.01);

} // namespace t2dex
