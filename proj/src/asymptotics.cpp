#include "ah/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "ah/quadrature.hpp"
#include "ah/riccati.hpp"
#include "ah/special_functions.hpp"

namespace ah {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

// -1/(alpha Gamma(-alpha) cos(pi alpha/2)) > 0 on (1,2)
double tail_prefactor(StabilityIndex alpha) {
    if (alpha.is_gaussian())
        throw std::domain_error("tail asymptotics: no power-law tail at alpha = 2");
    const double a = alpha.alpha;
    return -1.0 / (a * gamma_neg(a) * std::cos(0.5 * kPi * a));
}
}  // namespace

double p_alpha(double t, double a, StabilityIndex alpha) {
    if (t < 0.0) throw std::domain_error("p_alpha: t must be >= 0");
    if (a == 0.0) return t;  // continuous limit of the expression
    return (std::exp(-a * t) - std::exp(-alpha.alpha * a * t)) / (a * (alpha.alpha - 1.0));
}

double q_alpha(double t, double a, double b, StabilityIndex alpha) {
    if (t < 0.0) throw std::domain_error("q_alpha: t must be >= 0");
    if (a == 0.0) return 0.0;
    const double aa = alpha.alpha * a;
    return b * ((1.0 - std::exp(-aa * t)) / aa - p_alpha(t, a, alpha));
}

TailCoefficients tail_coefficients(double t, double x, const ModelParams& p) {
    if (t < 0.0) throw std::domain_error("tail_coefficients: t must be >= 0");
    if (t == 0.0) return {};
    return {p_alpha(t, p.a, p.alpha), q_alpha(t, p.a, p.b, p.alpha), iota_alpha(t, x, p)};
}

double tail_v(double u, double t, double x, const ModelParams& p) {
    if (!(u > 0.0) || !(t > 0.0)) throw std::domain_error("tail_v: u, t must be positive");
    const double level = q_alpha(t, p.a, p.b, p.alpha) + p_alpha(t, p.a, p.alpha) * x;
    return std::pow(p.sigma_n, p.alpha.alpha) * tail_prefactor(p.alpha) * level *
           std::pow(u, -p.alpha.alpha);
}

double small_ball_v_sigma_pos(double u, double t, double x, const ModelParams& p) {
    if (!(p.sigma > 0.0))
        throw std::domain_error("small_ball_v_sigma_pos: requires sigma > 0");
    if (!(u > 0.0) || !(t > 0.0))
        throw std::domain_error("small_ball_v_sigma_pos: u, t must be positive");
    const double expo = 2.0 * p.a * p.b / (p.sigma * p.sigma);
    const double vb = vbar(t, p);
    const BranchingParams bp = p.branching();
    const double s2 = p.sigma * p.sigma;
    // integrand decays like z^{-(3-alpha)}
    const double correction =
        integrate_upper(
            [&bp, s2](double z) { return z / psi_alpha(z, bp) - 2.0 / (s2 * z); }, vb,
            1e-12, 1e-10)
            .value;
    const double log_val = expo * std::log(u * vb) - std::lgamma(1.0 + expo) - x * vb -
                           p.a * p.b * correction;
    return std::exp(log_val);
}

double log_small_ball_v_sigma_zero(double u, const ModelParams& p) {
    if (p.sigma != 0.0)
        throw std::domain_error("log_small_ball_v_sigma_zero: requires sigma = 0");
    if (p.alpha.is_gaussian())
        throw std::domain_error("log_small_ball_v_sigma_zero: requires alpha < 2");
    if (!(u > 0.0))
        throw std::domain_error("log_small_ball_v_sigma_zero: u must be positive");
    const double a = p.alpha.alpha;
    const double c = -p.a * p.b * std::cos(0.5 * kPi * a);
    return -(a - 1.0) / (2.0 - a) * std::pow(c, 1.0 / (a - 1.0)) *
           std::pow(p.sigma_n, -a / (a - 1.0)) * std::pow(u, -(2.0 - a) / (a - 1.0));
}

double iota_alpha(double t, double x, const ModelParams& p) {
    if (!(t > 0.0)) throw std::domain_error("iota_alpha: t must be positive");
    const double a = p.a, b = p.b, al = p.alpha.alpha;
    const auto integrand = [a, b, al, x, t](double s) {
        const double eas = std::exp(-a * s);
        return (b * (1.0 - eas) + x * eas) * std::pow(1.0 - std::exp(-a * (t - s)), al);
    };
    return integrate(integrand, 0.0, t, 1e-12, 1e-10).value;
}

double tail_log_s(double u, double t, double x, const ModelParams& p) {
    if (!(u > 0.0) || !(t > 0.0))
        throw std::domain_error("tail_log_s: u, t must be positive");
    if (!(p.a > 0.0)) throw std::domain_error("tail_log_s: requires a > 0");
    return std::pow(p.sigma_n / (2.0 * p.a), p.alpha.alpha) * tail_prefactor(p.alpha) *
           iota_alpha(t, x, p) * std::pow(u, -p.alpha.alpha);
}

double lee_psi(double q) {
    if (q < 0.0) throw std::domain_error("lee_psi: q must be >= 0");
    if (q == 0.0) return 2.0;
    // sqrt(q^2+q) - q rewritten as 1/(sqrt(1+1/q)+1) to stay stable for large q
    return 2.0 - 4.0 / (std::sqrt(1.0 + 1.0 / q) + 1.0);
}

double asset_wing_slope(double T) {
    if (!(T > 0.0)) throw std::domain_error("asset_wing_slope: T must be positive");
    return 2.0 / T;
}

double asset_left_wing(double k, double T, StabilityIndex alpha) {
    constexpr double kE = 2.718281828459045235360287471352663;
    if (!(k < -kE))
        throw std::domain_error("asset_left_wing: requires k < -e");
    if (!(T > 0.0)) throw std::domain_error("asset_left_wing: T must be positive");
    const double lg = std::log(-k);
    const double llg = std::log(lg);
    const double inner = alpha.alpha * lg - 0.5 * llg;
    return std::sqrt(2.0 / T) * (std::sqrt(-k + inner) - std::sqrt(inner));
}

double variance_right_wing(double k, double T, StabilityIndex alpha) {
    if (!(k > 0.0)) throw std::domain_error("variance_right_wing: k must be positive");
    if (!(T > 0.0)) throw std::domain_error("variance_right_wing: T must be positive");
    return std::sqrt(lee_psi(alpha.alpha) * k / T);
}

double variance_left_wing(double k, double T, const ModelParams& p,
                          std::optional<double> put_price) {
    if (!(k < 0.0)) throw std::domain_error("variance_left_wing: k must be negative");
    if (!(T > 0.0)) throw std::domain_error("variance_left_wing: T must be positive");
    if (p.sigma > 0.0)
        return std::sqrt(lee_psi(2.0 * p.a * p.b / (p.sigma * p.sigma)) * (-k) / T);
    if (!put_price.has_value())
        throw std::invalid_argument(
            "variance_left_wing: sigma = 0 branch needs the put price E[(e^k - V_T)+]");
    if (!(*put_price > 0.0))
        throw std::invalid_argument("variance_left_wing: put price must be positive");
    return (-k) * std::sqrt((k - std::log(*put_price)) / (2.0 * T));
}

}  // namespace ah
