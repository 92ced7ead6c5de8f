#include "t2dex/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace t2dex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Keeps the running minimum; ties resolve toward the smaller input
// (least exercise achieving equal predicted cost).
struct BestCandidate {
    double u = 0.0;
    double cost = kInf;

    void consider(double u_cand, double cost_cand)
    {
        if (cost_cand < cost || (cost_cand == cost && u_cand < u)) {
            u = u_cand;
            cost = cost_cand;
        }
    }
};

} // namespace

void ControllerConfig::validate() const
{
    if (N < 1) {
        throw ValidationError("ControllerConfig.N must be at least 1");
    }
    if (!(T > 0.0)) {
        throw ValidationError("ControllerConfig.T must be strictly positive");
    }
    if (!(lambda >= 0.0)) {
        throw ValidationError("ControllerConfig.lambda must be non-negative");
    }
    if (!(u_eq_max >= 0.0)) {
        throw ValidationError("ControllerConfig.u_eq_max must be non-negative");
    }
    if (solver.grid_points < 2) {
        throw ValidationError("ControllerConfig.solver.grid_points must be at least 2");
    }
    if (!(solver.tol > 0.0)) {
        throw ValidationError("ControllerConfig.solver.tol must be strictly positive");
    }
    if (!(solver.h > 0.0)) {
        throw ValidationError("ControllerConfig.solver.h must be strictly positive");
    }
}

double horizon_cost(const StateVector& x_k, double u_eq,
                    const ControllerConfig& cfg, const ModelParams& p)
{
    const double horizon = cfg.N * cfg.T;
    const auto n_steps = static_cast<long long>(std::llround(horizon / cfg.solver.h));
    const long long n = std::max<long long>(n_steps, 1);
    const double h = horizon / static_cast<double>(n);
    const double penalty = cfg.lambda * u_eq * u_eq;

    StateVector x = x_k;
    double integrand_prev = x.G * x.G + penalty;
    double cost = 0.0;
    try {
        for (long long i = 0; i < n; ++i) {
            x = step(x, u_eq, h, p);
            const double integrand = x.G * x.G + penalty;
            cost += 0.5 * h * (integrand_prev + integrand);
            integrand_prev = integrand;
        }
    } catch (const NumericalFault&) {
        return kInf; // divergent candidate, excluded by the caller
    }
    return cost;
}

ControlDecision solve_period(const StateVector& x_k, const ControllerConfig& cfg,
                             const ModelParams& p, int k, double t_apply)
{
    cfg.validate();

    ControlDecision dec;
    dec.k = k;
    dec.t_apply = t_apply;

    if (cfg.u_eq_max == 0.0) { // degenerate bound: singleton feasible set
        dec.u_eq_star = 0.0;
        dec.cost_star = horizon_cost(x_k, 0.0, cfg, p);
        dec.cost_curve.emplace_back(0.0, dec.cost_star);
        if (std::isinf(dec.cost_star)) {
            throw AllCandidatesDiverged("solve_period: the only candidate diverged", t_apply);
        }
        return dec;
    }

    const int m = cfg.solver.grid_points;
    const double du = cfg.u_eq_max / static_cast<double>(m - 1);
    dec.cost_curve.reserve(static_cast<size_t>(m));

    BestCandidate best;
    int best_idx = -1;
    for (int i = 0; i < m; ++i) {
        const double u = (i == m - 1) ? cfg.u_eq_max : i * du;
        const double cost = horizon_cost(x_k, u, cfg, p);
        dec.cost_curve.emplace_back(u, cost);
        if (std::isinf(cost)) {
            ++dec.diverged_candidates;
            continue;
        }
        if (cost < best.cost) {
            best_idx = i;
        }
        best.consider(u, cost);
    }
    if (best_idx < 0) {
        throw AllCandidatesDiverged(
            "solve_period: all " + std::to_string(m) + " candidates diverged", t_apply);
    }

    // Golden-section refinement on the bracket around the coarse minimum.
    double a = dec.cost_curve[static_cast<size_t>(std::max(best_idx - 1, 0))].first;
    double b = dec.cost_curve[static_cast<size_t>(std::min(best_idx + 1, m - 1))].first;
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = horizon_cost(x_k, c, cfg, p);
    double fd = horizon_cost(x_k, d, cfg, p);
    while (b - a > cfg.solver.tol) {
        if (std::isinf(fc)) {
            ++dec.diverged_candidates;
        }
        if (std::isinf(fd)) {
            ++dec.diverged_candidates;
        }
        best.consider(c, fc);
        best.consider(d, fd);
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = horizon_cost(x_k, c, cfg, p);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = horizon_cost(x_k, d, cfg, p);
        }
    }
    best.consider(c, fc);
    best.consider(d, fd);

    dec.u_eq_star = best.u;
    dec.cost_star = best.cost;
    return dec;
}

ClosedLoopResult run_closed_loop(const StateVector& x0, const ControllerConfig& cfg,
                                 const ModelParams& p, double duration, double h_sim)
{
    cfg.validate();
    if (!(duration >= cfg.T)) {
        throw ValidationError("run_closed_loop: duration must cover at least one control period");
    }

    ClosedLoopResult result;
    StateVector x = x0;
    int k = 0;
    double t = 0.0;
    while (t < duration - 1e-9) {
        ControlDecision dec;
        try {
            dec = solve_period(x, cfg, p, k, t);
        } catch (NumericalFault& f) {
            f.t_days = t;
            throw;
        }
        const double t_end = std::min((k + 1) * cfg.T, duration);
        TimeGrid grid{t, t_end, h_sim};
        Trajectory seg = integrate(x, InputSchedule::constant(dec.u_eq_star), grid, p);
        x = seg.back().x;
        if (!result.trajectory.empty()) {
            result.trajectory.pop_back(); // boundary sample carries the new input
        }
        result.trajectory.insert(result.trajectory.end(), seg.begin(), seg.end());
        result.decisions.push_back(std::move(dec));
        t = t_end;
        ++k;
    }
    return result;
}

} // namespace t2dex
