#pragma once

#include <stdexcept>

#include "ah/rng.hpp"

namespace ah {

// Stability index of the spectrally positive driving noise, alpha in (1,2].
// alpha = 2 is the Gaussian limit and is handled by explicit branches
// everywhere; the stable-law formulas below are singular there.
struct StabilityIndex {
    double alpha;

    explicit StabilityIndex(double a) : alpha(a) {
        if (!(a > 1.0 && a <= 2.0))
            throw std::invalid_argument("StabilityIndex: alpha must lie in (1,2]");
    }
    bool is_gaussian() const { return alpha == 2.0; }
};

// Parameters of the branching mechanism
//   Psi_alpha(q) = a q + (sigma^2/2) q^2 - sigma_n^alpha q^alpha / cos(pi alpha/2).
struct BranchingParams {
    double a = 0.0;        // mean-reversion speed
    double sigma = 0.0;    // diffusion vol-of-vol
    double sigma_n = 0.0;  // jump vol-of-vol
    StabilityIndex alpha{1.5};

    void validate() const {
        if (a < 0.0 || sigma < 0.0 || sigma_n < 0.0)
            throw std::invalid_argument("BranchingParams: coefficients must be nonnegative");
    }
};

// Jump size threshold y on the variance process together with its scaled
// version y_bar = y / sigma_n (the threshold on the driving noise).
struct JumpThreshold {
    double y;
    double y_bar;

    static JumpThreshold absolute(double y, double sigma_n) {
        if (!(y > 0.0) || !(sigma_n > 0.0))
            throw std::invalid_argument("JumpThreshold: y and sigma_n must be positive");
        return {y, y / sigma_n};
    }
};

// Normalizing constant of the jump density: nu(dz) = c(alpha) z^{-1-alpha} dz
// with c(alpha) = -1/(cos(pi alpha/2) Gamma(-alpha)) > 0 on (1,2).
double levy_density_constant(StabilityIndex alpha);

// Density of the jump measure at zeta > 0. alpha = 2 is a domain error (the
// measure degenerates; callers must branch to the Gaussian limit).
double levy_density(StabilityIndex alpha, double zeta);

// nu((y_bar, inf)) = c(alpha) y_bar^{-alpha} / alpha.
double levy_tail_mass(StabilityIndex alpha, double y_bar);

// int_0^{eps_bar} z^2 nu(dz) = c(alpha) eps_bar^{2-alpha} / (2-alpha):
// the variance rate of the compensated small-jump block.
double levy_truncated_second_moment(StabilityIndex alpha, double eps_bar);

// Theta(alpha, y) = int_{y_bar}^inf z nu(dz)
//                 = (2/pi) alpha Gamma(alpha-1) sin(pi alpha/2) y_bar^{1-alpha}.
// Returns 0 at alpha = 2: the Gaussian limit carries no jump tail.
double theta_compensator(StabilityIndex alpha, double y_bar);

// Branching mechanism value at q >= 0; at alpha = 2 this is
// a q + (sigma^2/2 + sigma_n^2) q^2.
double psi_alpha(double q, const BranchingParams& p);

// One increment over dt of the compensated spectrally positive stable noise,
// normalized so E[exp(-q Z_t)] = exp(-t q^alpha / cos(pi alpha/2)).
//
// Sampling is Chambers-Mallows-Stuck for the totally skewed law: this target
// Laplace transform corresponds to the characteristic function
// exp(-|u|^alpha (1 - i sign(u) tan(pi alpha/2))), i.e. the CMS unit scale
// with skewness +1, and self-similarity gives the dt^{1/alpha} scaling. At
// alpha = 2 the increment is sqrt(2 dt) times a standard Gaussian.
double sample_stable_increment(StabilityIndex alpha, double dt, RandomStream& rng);

struct EffectiveParams {
    double a_tilde;
    double b_tilde;
};

// Drift parameters of the process truncated at jump threshold y:
// a~ = a + sigma_n Theta(alpha, y), b~ = a b / a~; a~ b~ = a b exactly.
EffectiveParams effective_params(double a, double b, double sigma_n, StabilityIndex alpha,
                                 double y_bar);

// 0 inaccessible for the variance process: 2ab >= sigma^2 for alpha < 2,
// 2ab >= sigma^2 + 2 sigma_n^2 for alpha = 2.
bool feller_check(double a, double b, double sigma, double sigma_n, StabilityIndex alpha);

}  // namespace ah
