#include "ah/riccati.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ah/errors.hpp"
#include "ah/ode.hpp"
#include "ah/quadrature.hpp"
#include "ah/roots.hpp"

namespace ah {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kBlowUpCeiling = 1e8;
constexpr double kConeTol = 1e-9;

// (-psi)^alpha with the principal branch; tiny positive real parts coming
// from roundoff are projected back onto the admissible half-plane so trial
// stage values never wander across the cut.
cplx alpha_power(cplx psi, double alpha) {
    cplx w = -psi;
    if (w.real() < 0.0) w = cplx(0.0, w.imag());
    if (w == cplx(0.0, 0.0)) return {0.0, 0.0};
    return std::pow(w, alpha);
}

cplx rhs_psi(const cplx& xi1, const cplx& psi, const cplx& xi3, const ModelParams& p) {
    const cplx quad = 0.5 * (xi1 * xi1 - xi1) + p.rho * p.sigma * xi1 * psi +
                      0.5 * p.sigma * p.sigma * psi * psi - p.a * psi + xi3;
    if (p.sigma_n == 0.0) return quad;
    if (p.alpha.is_gaussian()) return quad + p.sigma_n * p.sigma_n * psi * psi;
    const double c = std::cos(0.5 * kPi * p.alpha.alpha);
    return quad - std::pow(p.sigma_n, p.alpha.alpha) * alpha_power(psi, p.alpha.alpha) / c;
}

void validate_freq(const FreqTriple& xi) {
    if (xi.xi2.real() > 0.0)
        throw std::invalid_argument("solve_riccati: Re(xi2) must be <= 0");
    if (xi.xi3.real() > 0.0)
        throw std::invalid_argument("solve_riccati: Re(xi3) must be <= 0");
    const bool xi1_real = xi.xi1.imag() == 0.0;
    const bool xi1_strip = xi.xi1.real() >= 0.0 && xi.xi1.real() <= 1.0;
    if (!xi1_real && !xi1_strip)
        throw std::invalid_argument(
            "solve_riccati: xi1 must be real or have real part in [0,1]");
}

}  // namespace

cplx R_op(const FreqTriple& xi, cplx psi, const ModelParams& p) {
    if (psi.real() > 0.0)
        throw std::domain_error("R_op: Re(psi) must be <= 0");
    return rhs_psi(xi.xi1, psi, xi.xi3, p);
}

cplx F_op(const FreqTriple& xi, cplx psi, const ModelParams& p) {
    return p.r * xi.xi1 + p.a * p.b * psi;
}

RiccatiSolution solve_riccati(const FreqTriple& xi, double T, const ModelParams& p,
                              double tol) {
    p.validate();
    validate_freq(xi);
    if (!(T > 0.0)) throw std::invalid_argument("solve_riccati: T must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_riccati: tol must be positive");

    const bool real_mode = xi.is_real();

    // Real frequencies outside the moment domain explode instantly: the flow
    // exits the half-plane at once when psi = xi2 = 0 and R(xi1, 0) > 0.
    if (real_mode && xi.xi2.real() == 0.0 &&
        rhs_psi(xi.xi1, xi.xi2, xi.xi3, p).real() > 0.0)
        throw blow_up_error("solve_riccati: moment explosion at t = 0+");

    Rk45<2> solver;
    solver.rel_tol = tol;
    solver.abs_tol = tol * 1e-2;

    auto rhs = [&xi, &p](double, const Rk45<2>::State& y) {
        return Rk45<2>::State{rhs_psi(xi.xi1, y[0], xi.xi3, p),
                              p.r * xi.xi1 + p.a * p.b * y[0]};
    };

    auto hook = [&](double, Rk45<2>::State& y) {
        cplx& psi = y[0];
        if (std::abs(psi) > kBlowUpCeiling)
            throw blow_up_error("solve_riccati: |psi| crossed the blow-up ceiling");
        const double re = psi.real();
        if (re > kConeTol * (1.0 + std::abs(psi))) {
            if (real_mode)
                throw blow_up_error("solve_riccati: flow left Re(psi) <= 0 (moment explosion)");
            return StepVerdict::Reject;
        }
        if (re > 0.0) psi = cplx(0.0, psi.imag());
        return StepVerdict::Accept;
    };

    auto on_stall = [real_mode](double t) {
        if (real_mode)
            throw blow_up_error("solve_riccati: flow stalled at the half-plane boundary, t=" +
                                std::to_string(t));
        throw std::domain_error("solve_riccati: solution left Re(psi) <= 0 at t=" +
                                std::to_string(t));
    };

    const auto res = solver.solve(rhs, {xi.xi2, cplx(0.0, 0.0)}, 0.0, T, hook, on_stall);
    RiccatiSolution out;
    out.psi = res.y[0];
    out.phi = res.y[1];
    out.n_steps_used = res.n_steps;
    out.est_error = res.est_error;
    return out;
}

cplx joint_transform(const RiccatiSolution& sol, const FreqTriple& xi, double y0, double v0) {
    return std::exp(xi.xi1 * y0 + sol.psi * v0 + sol.phi);
}

BranchingFlow solve_branching_ode(double lambda, double t, const ModelParams& p, double tol) {
    if (lambda < 0.0)
        throw std::invalid_argument("solve_branching_ode: lambda must be >= 0");
    p.validate();
    if (lambda == 0.0 || !(t > 0.0)) return {lambda, 0.0};

    const BranchingParams bp = p.branching();
    Rk45<2> solver;
    solver.rel_tol = tol;
    solver.abs_tol = tol;
    auto rhs = [&bp](double, const Rk45<2>::State& y) {
        const double v = std::max(y[0].real(), 0.0);
        return Rk45<2>::State{cplx(-psi_alpha(v, bp), 0.0), cplx(v, 0.0)};
    };
    auto hook = [](double, Rk45<2>::State& y) {
        if (y[0].real() < 0.0) y[0] = cplx(0.0, 0.0);
        return StepVerdict::Accept;
    };
    const auto res = solver.solve(rhs, {cplx(lambda, 0.0), cplx(0.0, 0.0)}, 0.0, t, hook);
    return {res.y[0].real(), res.y[1].real()};
}

double laplace_v(double lambda, double t, double x, const ModelParams& p) {
    if (x < 0.0) throw std::invalid_argument("laplace_v: x must be >= 0");
    if (lambda == 0.0) return 1.0;
    const auto flow = solve_branching_ode(lambda, t, p, 1e-12);
    return std::exp(-x * flow.v - p.a * p.b * flow.integral);
}

double vbar(double t, const ModelParams& p) {
    p.validate();
    if (!(t > 0.0)) throw std::invalid_argument("vbar: t must be positive");
    if (p.sigma == 0.0 && p.sigma_n == 0.0)
        throw std::domain_error("vbar: Grey's condition fails (no branching noise)");

    const BranchingParams bp = p.branching();
    auto grey_time = [&bp](double v) {
        return integrate_upper([&bp](double z) { return 1.0 / psi_alpha(z, bp); }, v,
                               1e-12, 1e-10)
            .value;
    };

    // Bracket in log space; grey_time is strictly decreasing in v.
    double lo = 1.0, hi = 1.0;
    while (grey_time(lo) < t) {
        lo *= 0.125;
        if (lo < 1e-280) throw std::runtime_error("vbar: bracketing failed (lo)");
    }
    while (grey_time(hi) > t) {
        hi *= 8.0;
        if (hi > 1e280) throw std::runtime_error("vbar: bracketing failed (hi)");
    }
    const double lu =
        find_root([&](double u) { return grey_time(std::exp(u)) - t; }, std::log(lo),
                  std::log(hi), 1e-13);
    return std::exp(lu);
}

Interval moment_domain_s(const ModelParams& p) {
    p.validate();
    if (!(p.a > p.sigma * p.rho))
        throw std::invalid_argument("moment_domain_s: requires a > sigma * rho");
    return {0.0, 1.0};
}

double riccati_root_w(double xi1, const ModelParams& p) {
    if (xi1 < 0.0 || xi1 > 1.0)
        throw std::domain_error("riccati_root_w: xi1 must lie in [0,1]");
    (void)moment_domain_s(p);
    const FreqTriple xi{cplx(xi1, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
    auto r_real = [&](double w) { return R_op(xi, cplx(w, 0.0), p).real(); };
    const double r0 = r_real(0.0);
    if (r0 == 0.0) return 0.0;
    double w_lo = -1.0;
    while (r_real(w_lo) < 0.0) {
        w_lo *= 4.0;
        if (w_lo < -1e12)
            throw std::runtime_error("riccati_root_w: no sign change found");
    }
    return find_root(r_real, w_lo, 0.0, 1e-13);
}

Interval moment_domain_v(const ModelParams& p) {
    p.validate();
    const double lo = p.sigma > 0.0
                          ? -2.0 * p.a * p.b / (p.sigma * p.sigma)
                          : -std::numeric_limits<double>::infinity();
    return {lo, p.alpha.alpha};
}

}  // namespace ah
