#include "t2dex/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace t2dex {

namespace {

constexpr double kNegativeTol = 1e-9;
constexpr double kMaxSteps = 1e9;

StateVector axpy(const StateVector& x, double a, const StateVector& d)
{
    return {x.G + a * d.G, x.I + a * d.I, x.beta + a * d.beta,
            x.S_I + a * d.S_I, x.V_l + a * d.V_l};
}

} // namespace

void TimeGrid::validate() const
{
    if (!(t1 > t0)) {
        throw ValidationError("TimeGrid: t1 must be greater than t0");
    }
    if (!(h > 0.0)) {
        throw ValidationError("TimeGrid: h must be strictly positive");
    }
    if ((t1 - t0) / h >= kMaxSteps) {
        throw ValidationError("TimeGrid: step count exceeds 1e9");
    }
}

InputSchedule InputSchedule::constant(double u)
{
    InputSchedule s;
    s.add_segment(-std::numeric_limits<double>::infinity(), u);
    return s;
}

void InputSchedule::add_segment(double t_start, double u)
{
    if (!segments_.empty() && !(t_start > segments_.back().t_start)) {
        throw ValidationError("InputSchedule: segment starts must be strictly increasing");
    }
    segments_.push_back({t_start, u});
}

double InputSchedule::value_at(double t) const
{
    if (segments_.empty() || t < segments_.front().t_start) {
        throw ValidationError("InputSchedule: time before first segment");
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.t_start; });
    return std::prev(it)->u;
}

std::vector<double> InputSchedule::breakpoints_in(double t0, double t1) const
{
    std::vector<double> bp;
    for (const auto& s : segments_) {
        if (s.t_start > t0 && s.t_start < t1) {
            bp.push_back(s.t_start);
        }
    }
    return bp;
}

void enforce_physiological(const StateVector& x)
{
    if (!(std::isfinite(x.G) && std::isfinite(x.I) && std::isfinite(x.beta) &&
          std::isfinite(x.S_I) && std::isfinite(x.V_l))) {
        throw NonFiniteState("state became non-finite");
    }
    if (!is_physiological(x, kNegativeTol)) {
        throw NegativeState("state left the physiological set (component below -1e-9)");
    }
}

StateVector step(const StateVector& x, double u_eq, double h, const ModelParams& p)
{
    const StateVector k1 = vector_field(x, u_eq, p);
    const StateVector k2 = vector_field(axpy(x, 0.5 * h, k1), u_eq, p);
    const StateVector k3 = vector_field(axpy(x, 0.5 * h, k2), u_eq, p);
    const StateVector k4 = vector_field(axpy(x, h, k3), u_eq, p);
    const double w = h / 6.0;
    StateVector out{
        x.G + w * (k1.G + 2.0 * k2.G + 2.0 * k3.G + k4.G),
        x.I + w * (k1.I + 2.0 * k2.I + 2.0 * k3.I + k4.I),
        x.beta + w * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta),
        x.S_I + w * (k1.S_I + 2.0 * k2.S_I + 2.0 * k3.S_I + k4.S_I),
        x.V_l + w * (k1.V_l + 2.0 * k2.V_l + 2.0 * k3.V_l + k4.V_l)};
    enforce_physiological(out);
    return out;
}

Trajectory integrate(const StateVector& x0, const InputSchedule& u,
                     const TimeGrid& grid, const ModelParams& p)
{
    grid.validate();
    if (u.empty() || u.first_start() > grid.t0) {
        throw ValidationError("integrate: input schedule does not cover [t0, t1]");
    }

    // Segment boundaries: t0, interior breakpoints, t1.
    std::vector<double> bounds;
    bounds.push_back(grid.t0);
    for (double b : u.breakpoints_in(grid.t0, grid.t1)) {
        bounds.push_back(b);
    }
    bounds.push_back(grid.t1);

    Trajectory traj;
    traj.reserve(static_cast<size_t>((grid.t1 - grid.t0) / grid.h) + bounds.size() + 2);

    StateVector x = x0;
    traj.push_back({grid.t0, x, u.value_at(grid.t0)});

    for (size_t s = 0; s + 1 < bounds.size(); ++s) {
        const double a = bounds[s];
        const double b = bounds[s + 1];
        const double u_seg = u.value_at(a);
        const auto n = static_cast<long long>(std::ceil((b - a) / grid.h - 1e-9));
        const long long n_steps = std::max<long long>(n, 1);
        const double h = (b - a) / static_cast<double>(n_steps);
        for (long long i = 0; i < n_steps; ++i) {
            const double t_next = (i + 1 == n_steps) ? b : a + (i + 1) * h;
            try {
                x = step(x, u_seg, h, p);
            } catch (NumericalFault& f) {
                f.t_days = t_next;
                throw;
            }
            traj.push_back({t_next, x, u.value_at(t_next)});
        }
    }
    return traj;
}

} // namespace t2dex
