#pragma once

#include <complex>

#include "ah/model.hpp"

namespace ah {

using cplx = std::complex<double>;

// Frequency triple of the joint transform E[exp(xi1 logS + xi2 V + xi3 intV)].
// Admissible: xi1 on the imaginary axis or real (real values outside [0,1]
// make the solver blow up, which is the moment-explosion signal), and
// Re(xi2) <= 0, Re(xi3) <= 0.
struct FreqTriple {
    cplx xi1{0.0, 0.0};
    cplx xi2{0.0, 0.0};
    cplx xi3{0.0, 0.0};

    bool is_real() const {
        return xi1.imag() == 0.0 && xi2.imag() == 0.0 && xi3.imag() == 0.0;
    }
};

struct RiccatiSolution {
    cplx psi{0.0, 0.0};
    cplx phi{0.0, 0.0};
    long n_steps_used = 0;
    double est_error = 0.0;
};

// Main Riccati operator
//   R(xi1, psi, xi3) = (xi1^2 - xi1)/2 + rho sigma xi1 psi + sigma^2 psi^2 / 2
//                      - a psi - sigma_n^alpha (-psi)^alpha / cos(pi alpha/2) + xi3,
// with the principal branch of (-psi)^alpha; requires Re(psi) <= 0 so the
// branch cut is never crossed. At alpha = 2 the power term becomes
// sigma_n^2 psi^2 (Heston with sigma^2 -> sigma^2 + 2 sigma_n^2).
cplx R_op(const FreqTriple& xi, cplx psi, const ModelParams& p);

// State-independent operator F(xi1, psi) = r xi1 + a b psi.
cplx F_op(const FreqTriple& xi, cplx psi, const ModelParams& p);

// Integrates d psi/dt = R, d phi/dt = F from psi(0) = xi2, phi(0) = 0 with an
// adaptive RK45 whose accepted states are kept inside Re(psi) <= 0. Throws
// blow_up_error when |psi| crosses 1e8 or a real-frequency flow exits the
// half-plane (the corresponding moment is infinite), std::domain_error when a
// complex flow cannot be kept admissible.
RiccatiSolution solve_riccati(const FreqTriple& xi, double T, const ModelParams& p,
                              double tol = 1e-10);

// exp(xi1 y0 + psi v0 + phi): the transform value at (Y0, V0) = (y0, v0).
cplx joint_transform(const RiccatiSolution& sol, const FreqTriple& xi, double y0, double v0);

struct BranchingFlow {
    double v = 0.0;         // v_t(lambda)
    double integral = 0.0;  // int_0^t v_s(lambda) ds
};

// Flow of dv/dt = -Psi_alpha(v), v(0) = lambda >= 0, with the running
// integral carried as a second state.
BranchingFlow solve_branching_ode(double lambda, double t, const ModelParams& p,
                                  double tol = 1e-12);

// E_x[exp(-lambda V_t)] = exp(-x v_t(lambda) - a b int_0^t v_s(lambda) ds).
double laplace_v(double lambda, double t, double x, const ModelParams& p);

// Minimal solution of dv/dt = -Psi_alpha(v) started from +infinity, found by
// inverting t = int_{vbar}^inf dz / Psi_alpha(z). Requires Grey's condition
// (sigma > 0 or sigma_n > 0).
double vbar(double t, const ModelParams& p);

struct Interval {
    double lo;
    double hi;
};

// Maximal domain [0,1] of the moment generating function of log S_T.
// Requires a > sigma * rho.
Interval moment_domain_s(const ModelParams& p);

// The root w(xi1) <= 0 of R(xi1, w) = 0 for real xi1 in [0,1]; w(0) = w(1) = 0.
double riccati_root_w(double xi1, const ModelParams& p);

// {p : E[V_t^p] < infinity} = (-2ab/sigma^2, alpha), left endpoint -inf when
// sigma = 0.
Interval moment_domain_v(const ModelParams& p);

}  // namespace ah
