#include "t2dex/model.hpp"

#include <string>

namespace t2dex {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0)) {
        throw ValidationError(std::string("ModelParams.") + name + " must be strictly positive");
    }
}

} // namespace

void validate(const ModelParams& p)
{
    require_positive(p.R0, "R0");
    require_positive(p.Eg0, "Eg0");
    require_positive(p.sigma, "sigma");
    require_positive(p.alpha, "alpha");
    require_positive(p.k, "k");
    require_positive(p.d0, "d0");
    require_positive(p.r1r, "r1r");
    require_positive(p.r2r, "r2r");
    require_positive(p.r1a, "r1a");
    require_positive(p.r2a, "r2a");
    require_positive(p.c, "c");
    require_positive(p.S_I_target, "S_I_target");
    require_positive(p.k_n_si, "k_n_si");
    require_positive(p.SR, "SR");
    require_positive(p.K_IL6, "K_IL6");
    require_positive(p.k_s, "k_s");
    require_positive(p.zeta_p, "zeta_p");
    require_positive(p.k_p, "k_p");
    require_positive(p.k_a, "k_a");
    if (!(p.zeta_a >= 0.0 && p.zeta_a < 1.0)) {
        throw ValidationError("ModelParams.zeta_a must lie in [0, 1)");
    }
    if (!(p.zeta_si >= 0.0 && p.zeta_si < 1.0)) {
        throw ValidationError("ModelParams.zeta_si must lie in [0, 1)");
    }
}

bool is_physiological(const StateVector& x, double tol)
{
    if (!(std::isfinite(x.G) && std::isfinite(x.I) && std::isfinite(x.beta) &&
          std::isfinite(x.S_I) && std::isfinite(x.V_l))) {
        return false;
    }
    return x.G > -tol && x.I >= -tol && x.beta >= -tol && x.S_I >= -tol && x.V_l >= -tol;
}

} // namespace t2dex
