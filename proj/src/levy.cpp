#include "ah/levy.hpp"

#include <cmath>

#include "ah/special_functions.hpp"

namespace ah {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

double cos_half_pi_alpha(double alpha) { return std::cos(0.5 * kPi * alpha); }
}  // namespace

double levy_density_constant(StabilityIndex alpha) {
    if (alpha.is_gaussian())
        throw std::domain_error("levy_density_constant: undefined at alpha = 2");
    return -1.0 / (cos_half_pi_alpha(alpha.alpha) * gamma_neg(alpha.alpha));
}

double levy_density(StabilityIndex alpha, double zeta) {
    if (!(zeta > 0.0)) throw std::domain_error("levy_density: zeta must be positive");
    return levy_density_constant(alpha) * std::pow(zeta, -1.0 - alpha.alpha);
}

double levy_tail_mass(StabilityIndex alpha, double y_bar) {
    if (!(y_bar > 0.0)) throw std::domain_error("levy_tail_mass: y_bar must be positive");
    return levy_density_constant(alpha) * std::pow(y_bar, -alpha.alpha) / alpha.alpha;
}

double levy_truncated_second_moment(StabilityIndex alpha, double eps_bar) {
    if (!(eps_bar > 0.0))
        throw std::domain_error("levy_truncated_second_moment: eps_bar must be positive");
    return levy_density_constant(alpha) * std::pow(eps_bar, 2.0 - alpha.alpha) /
           (2.0 - alpha.alpha);
}

double theta_compensator(StabilityIndex alpha, double y_bar) {
    if (!(y_bar > 0.0)) throw std::domain_error("theta_compensator: y_bar must be positive");
    if (alpha.is_gaussian()) return 0.0;
    const double a = alpha.alpha;
    return (2.0 / kPi) * a * std::tgamma(a - 1.0) * std::sin(0.5 * kPi * a) *
           std::pow(y_bar, 1.0 - a);
}

double psi_alpha(double q, const BranchingParams& p) {
    if (q < 0.0) throw std::domain_error("psi_alpha: q must be nonnegative");
    p.validate();
    const double quad = p.a * q + 0.5 * p.sigma * p.sigma * q * q;
    if (p.alpha.is_gaussian()) return quad + p.sigma_n * p.sigma_n * q * q;
    if (q == 0.0) return 0.0;
    return quad - std::pow(p.sigma_n, p.alpha.alpha) * std::pow(q, p.alpha.alpha) /
                      cos_half_pi_alpha(p.alpha.alpha);
}

double sample_stable_increment(StabilityIndex alpha, double dt, RandomStream& rng) {
    if (!(dt > 0.0)) throw std::domain_error("sample_stable_increment: dt must be positive");
    if (alpha.is_gaussian()) return std::sqrt(2.0 * dt) * rng.gaussian();

    const double a = alpha.alpha;
    const double u = kPi * (rng.uniform() - 0.5);  // uniform on (-pi/2, pi/2)
    const double w = rng.exponential();
    const double b = std::atan(std::tan(0.5 * kPi * a)) / a;
    const double s = std::pow(1.0 + std::pow(std::tan(0.5 * kPi * a), 2.0), 0.5 / a);
    const double x = s * std::sin(a * (u + b)) / std::pow(std::cos(u), 1.0 / a) *
                     std::pow(std::cos(u - a * (u + b)) / w, (1.0 - a) / a);
    return std::pow(dt, 1.0 / a) * x;
}

EffectiveParams effective_params(double a, double b, double sigma_n, StabilityIndex alpha,
                                 double y_bar) {
    const double a_tilde = a + sigma_n * theta_compensator(alpha, y_bar);
    return {a_tilde, a_tilde > 0.0 ? a * b / a_tilde : b};
}

bool feller_check(double a, double b, double sigma, double sigma_n, StabilityIndex alpha) {
    if (alpha.is_gaussian())
        return 2.0 * a * b >= sigma * sigma + 2.0 * sigma_n * sigma_n;
    return 2.0 * a * b >= sigma * sigma;
}

}  // namespace ah
