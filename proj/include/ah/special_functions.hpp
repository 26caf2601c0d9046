#pragma once

namespace ah {

// Gamma(-alpha) for alpha in (1,2), via the reflection formula
// Gamma(-a) = pi / (sin(pi(2-a)) Gamma(1+a)); positive on this range and
// well conditioned at both endpoints.
double gamma_neg(double alpha);

// Regularized incomplete gamma functions, s > 0.
// gamma_p(s,x) = P(s,x) = gamma(s,x)/Gamma(s), gamma_q = 1 - P.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

double norm_pdf(double x);
double norm_cdf(double x);

// Survival function of the Kolmogorov distribution, Q(lam) = 2 sum (-1)^{k-1} exp(-2 k^2 lam^2).
double kolmogorov_sf(double lambda);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, double df);

}  // namespace ah
