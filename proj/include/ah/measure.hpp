#pragma once

#include "ah/model.hpp"

namespace ah {

// Parameters of the Esscher-type change of measure: eta tilts the variance
// Brownian noise, eta_bar the orthogonal price noise, theta >= 0 tempers the
// jump measure by e^{-theta zeta}.
struct EsscherParams {
    double eta = 0.0;
    double eta_bar = 0.0;
    double theta = 0.0;

    void validate() const {
        if (theta < 0.0)
            throw std::invalid_argument("EsscherParams: theta must be >= 0");
    }
};

// Model under the physical measure. The jump measure is the tempered density
// e^{-theta zeta} nu(dzeta); params alone describe the dynamics only when
// tempering = 0, and simulation under a tempered measure is not supported.
struct PhysicalModel {
    ModelParams params;
    double tempering = 0.0;
    // price drift under P: mu(v) = drift_const + drift_slope * v
    double drift_const = 0.0;
    double drift_slope = 0.0;

    // The parameter set is simulatable only in the untempered case.
    ModelParams simulatable_params() const;
};

// a_P = a - sigma eta - alpha sigma_n theta^{alpha-1} / cos(pi alpha/2),
// b_P = a b / a_P; volatility parameters are invariant. Throws when the
// implied a_P is not positive.
PhysicalModel to_physical(const ModelParams& q, const EsscherParams& e);

struct RiskPremiums {
    double lambda_s = 0.0;
    double lambda_v = 0.0;
};

// lambda_S(v) = -(rho eta + sqrt(1-rho^2) eta_bar) v,
// lambda_V(v) = -(sigma eta + alpha sigma_n theta^{alpha-1}/cos(pi alpha/2)) v.
RiskPremiums risk_premiums(double v, const ModelParams& q, const EsscherParams& e);

// Tempered jump density e^{-theta zeta} nu_alpha(zeta); theta = 0 recovers
// levy_density exactly.
double tempered_density(double zeta, StabilityIndex alpha, double theta);

}  // namespace ah
