#pragma once

#include <stdexcept>

#include "ah/levy.hpp"

namespace ah {

// Full risk-neutral parameter set of the model
//   dS/S = r dt + sqrt(V) dB
//   dV   = a(b - V) dt + sigma sqrt(V) dW + sigma_n V^{1/alpha} dZ
// with corr(dB, dW) = rho and Z the compensated spectrally positive stable
// noise of levy.hpp.
struct ModelParams {
    double r = 0.0;
    double a = 0.0;
    double b = 0.0;
    double sigma = 0.0;
    double sigma_n = 0.0;
    StabilityIndex alpha{1.5};
    double rho = 0.0;
    double s0 = 1.0;
    double v0 = 0.0;

    void validate() const {
        if (a < 0.0 || b < 0.0 || sigma < 0.0 || sigma_n < 0.0)
            throw std::invalid_argument("ModelParams: coefficients must be nonnegative");
        if (!(rho > -1.0 && rho < 1.0))
            throw std::invalid_argument("ModelParams: rho must lie strictly in (-1,1)");
        if (!(s0 > 0.0)) throw std::invalid_argument("ModelParams: s0 must be positive");
        if (v0 < 0.0) throw std::invalid_argument("ModelParams: v0 must be nonnegative");
    }

    BranchingParams branching() const { return {a, sigma, sigma_n, alpha}; }

    bool feller() const { return feller_check(a, b, sigma, sigma_n, alpha); }
};

// Uniform simulation grid plus the jump-size split point: jumps of V below
// small_jump_cutoff are folded into a matched-variance Gaussian, larger ones
// are simulated individually.
struct SimGrid {
    double t_end = 1.0;
    long n_steps = 1000;
    double small_jump_cutoff = 1e-4;

    double dt() const { return t_end / static_cast<double>(n_steps); }

    void validate() const {
        if (!(t_end > 0.0) || n_steps <= 0)
            throw std::invalid_argument("SimGrid: t_end and n_steps must be positive");
        if (!(small_jump_cutoff > 0.0))
            throw std::invalid_argument("SimGrid: small_jump_cutoff must be positive");
    }

    static SimGrid make(double t_end, long n_steps, double sigma_n) {
        SimGrid g;
        g.t_end = t_end;
        g.n_steps = n_steps;
        g.small_jump_cutoff = sigma_n > 0.0 ? 1e-4 * sigma_n : 1e-4;
        return g;
    }
};

}  // namespace ah
