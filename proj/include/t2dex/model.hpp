#pragma once

#include <cmath>

#include "t2dex/errors.hpp"

namespace t2dex {

/// The five physiological states of the modified Topp progression model.
/// All rates in the model are per day; time unit throughout is days.
struct StateVector {
    double G;    ///< plasma glucose concentration [mg/dl]
    double I;    ///< serum insulin concentration [uU/ml]
    double beta; ///< beta-cell mass [mg]
    double S_I;  ///< insulin sensitivity [ml/uU/d]
    double V_l;  ///< integrated exercise effect [(pg/dl)*min]
};

/// Rate constants and Hill parameters of the progression model.
struct ModelParams {
    double R0;         ///< net glucose production at zero glucose [mg/dl/d]
    double Eg0;        ///< glucose effectiveness [1/d]
    double sigma;      ///< maximal insulin secretion rate [uU/ml/d]
    double alpha;      ///< secretion half-saturation [(mg/dl)^2]
    double k;          ///< insulin clearance rate [1/d]
    double d0;         ///< baseline apoptosis rate [1/d]
    double r1r;        ///< proliferation linear coefficient
    double r2r;        ///< proliferation quadratic coefficient
    double r1a;        ///< apoptosis linear coefficient
    double r2a;        ///< apoptosis quadratic coefficient
    double c;          ///< insulin-sensitivity relaxation rate [1/d]
    double S_I_target; ///< asymptotic insulin sensitivity [ml/uU/d]
    double zeta_si;    ///< Hill gain, exercise effect on S_I relaxation (< 1)
    double k_n_si;     ///< Hill half-saturation for the S_I effect
    double SR;         ///< V_l source scaling
    double K_IL6;      ///< V_l source normalization
    double k_s;        ///< V_l decay rate [1/d]
    double zeta_p;     ///< Hill gain, proliferation boost
    double k_p;        ///< Hill half-saturation, proliferation boost
    double zeta_a;     ///< Hill gain, apoptosis suppression (< 1)
    double k_a;        ///< Hill half-saturation, apoptosis suppression
};

/// Throws ValidationError naming the offending field.
void validate(const ModelParams& p);

/// True if x is finite and inside the physiological set
/// (G > 0, other components >= 0) up to `tol` below zero.
bool is_physiological(const StateVector& x, double tol = 0.0);

/// Baseline beta-cell proliferation rate P(G) = r1r*G - r2r*G^2 [1/d].
inline double proliferation_base(double G, const ModelParams& p)
{
    return p.r1r * G - p.r2r * G * G;
}

/// Baseline beta-cell apoptosis rate A(G) = d0 - r1a*G + r2a*G^2 [1/d].
inline double apoptosis_base(double G, const ModelParams& p)
{
    return p.d0 - p.r1a * G + p.r2a * G * G;
}

/// Proliferation boost from accumulated exercise: 1 + zeta_p*V^2/(k_p^2+V^2).
/// Strictly increasing in V_l, range [1, 1+zeta_p).
inline double psi1(double V_l, const ModelParams& p)
{
    const double v2 = V_l * V_l;
    return 1.0 + p.zeta_p * v2 / (p.k_p * p.k_p + v2);
}

/// Apoptosis suppression from accumulated exercise: 1 - zeta_a*V^2/(k_a^2+V^2).
/// Strictly decreasing in V_l, range (1-zeta_a, 1].
inline double psi2(double V_l, const ModelParams& p)
{
    const double v2 = V_l * V_l;
    return 1.0 - p.zeta_a * v2 / (p.k_a * p.k_a + v2);
}

/// Right-hand side of the progression model under the equivalent exercise
/// input u_eq. Defined for all real states; enforcement of the physiological
/// set is the integrator's job. Throws NonFiniteState if any component of the
/// result is NaN or infinite.
inline StateVector vector_field(const StateVector& x, double u_eq, const ModelParams& p)
{
    StateVector d;
    d.G = p.R0 - (p.Eg0 + x.S_I * x.I) * x.G;
    const double g2 = x.G * x.G;
    d.I = x.beta * p.sigma * g2 / (p.alpha + g2) - p.k * x.I;
    const double prolif = proliferation_base(x.G, p) * psi1(x.V_l, p);
    const double apopt = apoptosis_base(x.G, p) * psi2(x.V_l, p);
    d.beta = (prolif - apopt) * x.beta;
    d.S_I = -p.c * (x.S_I - p.S_I_target) * (1.0 - p.zeta_si * x.V_l / (p.k_n_si + x.V_l));
    d.V_l = (p.SR / p.K_IL6) * u_eq - p.k_s * x.V_l;
    if (!(std::isfinite(d.G) && std::isfinite(d.I) && std::isfinite(d.beta) &&
          std::isfinite(d.S_I) && std::isfinite(d.V_l))) {
        throw NonFiniteState("vector_field produced a non-finite derivative");
    }
    return d;
}

} // namespace t2dex
