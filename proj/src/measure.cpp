#include "ah/measure.hpp"

#include <cmath>

#include "ah/errors.hpp"

namespace ah {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

// alpha sigma_n theta^{alpha-1} / cos(pi alpha/2); zero at theta = 0.
double jump_tilt(const ModelParams& q, double theta) {
    if (theta == 0.0) return 0.0;
    return q.alpha.alpha * q.sigma_n * std::pow(theta, q.alpha.alpha - 1.0) /
           std::cos(0.5 * kPi * q.alpha.alpha);
}
}  // namespace

ModelParams PhysicalModel::simulatable_params() const {
    if (tempering > 0.0)
        throw not_supported_error(
            "PhysicalModel: simulation under a tempered jump measure is not supported");
    return params;
}

PhysicalModel to_physical(const ModelParams& q, const EsscherParams& e) {
    q.validate();
    e.validate();
    const double a_p = q.a - q.sigma * e.eta - jump_tilt(q, e.theta);
    if (!(a_p > 0.0))
        throw std::invalid_argument(
            "to_physical: (eta, eta_bar, theta) must keep the physical mean reversion positive");
    PhysicalModel out;
    out.params = q;
    out.params.a = a_p;
    out.params.b = q.a * q.b / a_p;
    out.tempering = e.theta;
    out.drift_const = q.r;
    out.drift_slope = -(q.rho * e.eta + std::sqrt(1.0 - q.rho * q.rho) * e.eta_bar);
    return out;
}

RiskPremiums risk_premiums(double v, const ModelParams& q, const EsscherParams& e) {
    if (v < 0.0) throw std::invalid_argument("risk_premiums: v must be >= 0");
    e.validate();
    RiskPremiums out;
    out.lambda_s = -(q.rho * e.eta + std::sqrt(1.0 - q.rho * q.rho) * e.eta_bar) * v;
    out.lambda_v = -(q.sigma * e.eta + jump_tilt(q, e.theta)) * v;
    return out;
}

double tempered_density(double zeta, StabilityIndex alpha, double theta) {
    if (theta < 0.0) throw std::domain_error("tempered_density: theta must be >= 0");
    return std::exp(-theta * zeta) * levy_density(alpha, zeta);
}

}  // namespace ah
