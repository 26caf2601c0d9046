#pragma once

#include <optional>

#include "ah/model.hpp"

namespace ah {

// Time profiles entering the tail of V_t:
//   p_alpha(t) = (e^{-at} - e^{-alpha a t}) / (a (alpha-1))
//   q_alpha(t) = b ((1 - e^{-alpha a t})/(alpha a) - p_alpha(t)).
double p_alpha(double t, double a, StabilityIndex alpha);
double q_alpha(double t, double a, double b, StabilityIndex alpha);

// The three tail time profiles evaluated together at (t, x); all vanish at
// t = 0.
struct TailCoefficients {
    double p_alpha_t = 0.0;
    double q_alpha_t = 0.0;
    double iota_alpha_t = 0.0;
};
TailCoefficients tail_coefficients(double t, double x, const ModelParams& p);

// Asymptotic equivalent of P_x(V_t > u) as u -> infinity:
//   -sigma_n^alpha / (alpha Gamma(-alpha) cos(pi alpha/2)) (q_a(t) + p_a(t) x) u^-alpha.
// This is the equivalent, not the exact probability. alpha = 2 has Gaussian
// tails and is a domain error.
double tail_v(double u, double t, double x, const ModelParams& p);

// Asymptotic equivalent of P_x(V_t <= u) as u -> 0 for sigma > 0:
//   u^{2ab/s^2} vbar_t^{2ab/s^2} / Gamma(1 + 2ab/s^2)
//     * exp(-x vbar_t - ab int_{vbar_t}^inf (z/Psi(z) - 2/(s^2 z)) dz).
// Evaluated in log space; underflows to 0 when the exponent 2ab/sigma^2 is
// large (deep Feller regime), which is the honest value of the equivalent.
double small_ball_v_sigma_pos(double u, double t, double x, const ModelParams& p);

// log-asymptotic of P_x(V_t <= u) for sigma = 0; independent of t and x:
//   -((alpha-1)/(2-alpha)) (-ab cos(pi alpha/2))^{1/(alpha-1)}
//      sigma_n^{-alpha/(alpha-1)} u^{-(2-alpha)/(alpha-1)}.
double log_small_ball_v_sigma_zero(double u, const ModelParams& p);

// iota_alpha(t) = int_0^t (b(1-e^{-as}) + x e^{-as}) (1 - e^{-a(t-s)})^alpha ds,
// the time profile of the left tail of log S (written in overflow-free form).
double iota_alpha(double t, double x, const ModelParams& p);

// Asymptotic equivalent of P_x(-log S_t > u):
//   -(sigma_n/(2a))^alpha iota_alpha(t) / (alpha cos(pi alpha/2) Gamma(-alpha)) u^-alpha.
double tail_log_s(double u, double t, double x, const ModelParams& p);

// Lee slope function psi(q) = 2 - 4 (sqrt(q^2+q) - q); strictly decreasing
// from psi(0) = 2 to 0 at infinity.
double lee_psi(double q);

// Asset smile wing slope limsup Sigma^2(T,k)/|k| = 2/T.
double asset_wing_slope(double T);

// Two-term left-wing expansion of the asset implied vol for k < -e:
//   sqrt(2/T) [ sqrt(-k + alpha log(-k) - log log(-k)/2)
//             - sqrt(alpha log(-k) - log log(-k)/2) ].
double asset_left_wing(double k, double T, StabilityIndex alpha);

// Right wing of the variance smile: sqrt(psi(alpha) k / T), k > 0.
double variance_right_wing(double k, double T, StabilityIndex alpha);

// Left wing of the variance smile. sigma > 0: sqrt(psi(2ab/sigma^2) (-k) / T).
// sigma = 0 needs the put price E[(e^k - V_T)+]:
//   (-k) sqrt(log(e^k / P)) / sqrt(2T).
double variance_left_wing(double k, double T, const ModelParams& p,
                          std::optional<double> put_price = std::nullopt);

}  // namespace ah
