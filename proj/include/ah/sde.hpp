#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ah/model.hpp"
#include "ah/rng.hpp"

namespace ah {

struct JumpEvent {
    double time;
    double size;  // jump of V itself (already scaled by sigma_n)
};

struct VPath {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<JumpEvent> jumps;   // every simulated jump above the cutoff
    long clamp_count = 0;           // negative proposals clamped to zero
    double total_jump_mass = 0.0;   // sum of applied large-jump sizes
    bool absorbed = false;          // CB paths only
    double absorption_time = std::numeric_limits<double>::infinity();
};

struct JointPath {
    VPath vpath;
    std::vector<double> log_s;
    std::vector<double> int_v;  // trapezoidal running integral of V
};

struct JointTerminal {
    double v = 0.0;
    double log_s = 0.0;
    double int_v = 0.0;
};

namespace detail {

// Euler scheme coefficients for one jump band (lo, hi) in scaled units.
// Jumps of V below `lo` are folded into a Gaussian with the matched variance
// rate; jumps in the band are simulated as a compound Poisson block with its
// mean removed from the drift, so the compensated jump integral keeps zero
// mean exactly and E[V_t] follows the affine closed form.
struct JumpScheme {
    bool active = false;
    double alpha = 2.0;
    double sigma_n = 0.0;
    double eps_bar = 0.0;      // lower band edge (scaled)
    double band_hi = 0.0;      // upper band edge (scaled), inf if untruncated
    double gauss_var = 0.0;    // variance rate of the small-jump Gaussian, per V per dt
    double band_rate = 0.0;    // Poisson rate of band jumps, per V per dt
    double comp_drift = 0.0;   // compensator drift of band jumps, per V per dt
    double trunc_frac = 0.0;   // 1 - (eps_bar/band_hi)^alpha, for size inversion

    // scaled jump size with density ~ z^{-1-alpha} restricted to the band
    double sample_scaled_size(RandomStream& rng) const {
        const double u = rng.uniform();
        if (!std::isfinite(band_hi))
            return eps_bar * std::pow(u, -1.0 / alpha);
        return eps_bar * std::pow(1.0 - u * trunc_frac, -1.0 / alpha);
    }
};

JumpScheme make_jump_scheme(const ModelParams& p, double small_jump_cutoff, double y_bar_hi);

constexpr double kAbsorptionFloor = 1e-12;

// One shared Euler core. The observer receives every grid point; when Joint
// is set the log-price and the running trapezoidal integral of V are evolved
// alongside with corr(dB, dW) = rho realized as B = rho W + sqrt(1-rho^2) Wb.
template <bool Joint, class Observer>
void run_affine_scheme(const ModelParams& p, const std::vector<double>& times,
                       double v_start, const JumpScheme& js, double drift_a,
                       double drift_b, bool absorbing, RandomStream& rng,
                       Observer&& obs, VPath* record) {
    const double sigma = p.sigma;
    const double rho = p.rho;
    const double rho_bar = std::sqrt(1.0 - rho * rho);

    double v = v_start;
    double log_s = std::log(p.s0);
    double int_v = 0.0;
    obs(0, v, log_s, int_v);

    double prev_jump_time = -std::numeric_limits<double>::infinity();
    std::vector<double> jump_times_buf;

    for (std::size_t i = 1; i < times.size(); ++i) {
        const double t0 = times[i - 1];
        const double dt = times[i] - t0;
        const double vp = v > 0.0 ? v : 0.0;

        if (absorbing && v <= detail::kAbsorptionFloor) {
            v = 0.0;
            if constexpr (Joint) {
                log_s += p.r * dt;
                // int_v unchanged
            }
            obs(i, v, log_s, int_v);
            continue;
        }

        double dv = drift_a * (drift_b - vp) * dt;
        double g_diff = 0.0;
        if (sigma > 0.0 || Joint) g_diff = rng.gaussian();
        if (sigma > 0.0 && vp > 0.0) dv += sigma * std::sqrt(vp * dt) * g_diff;

        if (js.active && vp > 0.0) {
            if (js.gauss_var > 0.0)
                dv += std::sqrt(js.gauss_var * vp * dt) * rng.gaussian();
            dv -= js.comp_drift * vp * dt;
            const long n_jumps = rng.poisson(js.band_rate * vp * dt);
            if (n_jumps > 0) {
                jump_times_buf.clear();
                for (long j = 0; j < n_jumps; ++j)
                    jump_times_buf.push_back(t0 + dt * rng.uniform());
                std::sort(jump_times_buf.begin(), jump_times_buf.end());
                for (long j = 0; j < n_jumps; ++j) {
                    const double size = js.sigma_n * js.sample_scaled_size(rng);
                    dv += size;
                    if (record) {
                        double jt = jump_times_buf[static_cast<std::size_t>(j)];
                        if (jt <= prev_jump_time)
                            jt = std::nextafter(prev_jump_time,
                                                std::numeric_limits<double>::infinity());
                        prev_jump_time = jt;
                        record->jumps.push_back({jt, size});
                        record->total_jump_mass += size;
                    }
                }
            }
        }

        double v_new = v + dv;
        if (v_new < 0.0) {
            v_new = 0.0;
            if (record) ++record->clamp_count;
        }
        if (absorbing && v_new <= detail::kAbsorptionFloor) {
            v_new = 0.0;
            if (record && !record->absorbed) {
                record->absorbed = true;
                record->absorption_time = times[i];
            }
        }

        if constexpr (Joint) {
            const double g_perp = rng.gaussian();
            const double g_price = rho * g_diff + rho_bar * g_perp;
            log_s += (p.r - 0.5 * vp) * dt;
            if (vp > 0.0) log_s += std::sqrt(vp * dt) * g_price;
            int_v += 0.5 * (vp + (v_new > 0.0 ? v_new : 0.0)) * dt;
        }

        v = v_new;
        obs(i, v, log_s, int_v);
    }
}

std::vector<double> uniform_times(const SimGrid& g);

}  // namespace detail

// Variance path under the full jump measure.
VPath simulate_v_path(const ModelParams& p, const SimGrid& g, RandomStream& rng);

// Joint (V, log S, int V) path.
JointPath simulate_joint_path(const ModelParams& p, const SimGrid& g, RandomStream& rng);

// Branching path without immigration (b = 0), absorbed at zero. Used for the
// jump-cluster processes.
VPath simulate_cb_path(double u0, const ModelParams& p, const SimGrid& g, RandomStream& rng);

// Same CB dynamics on an arbitrary strictly increasing offset grid starting
// at 0 (first step may be fractional; clusters are born between grid points).
VPath simulate_cb_on_times(double u0, const ModelParams& p, std::vector<double> times,
                           double small_jump_cutoff, RandomStream& rng);

// Truncated process: drift (a~, b~), jumps capped at y_bar (scaled units),
// small jumps compensated. The fundamental part of the cluster decomposition.
VPath simulate_truncated_path(const ModelParams& p, const SimGrid& g, double y_bar,
                              RandomStream& rng);

// Storage-free terminal samplers for large Monte Carlo batches.
double simulate_v_terminal(const ModelParams& p, const SimGrid& g, RandomStream& rng);
JointTerminal simulate_joint_terminal(const ModelParams& p, const SimGrid& g,
                                      RandomStream& rng);

// Values of V at the grid points with the given indices (sorted).
std::vector<double> simulate_v_at(const ModelParams& p, const SimGrid& g,
                                  const std::vector<std::size_t>& obs_idx,
                                  RandomStream& rng);

// As simulate_v_at but for the truncated process.
std::vector<double> simulate_truncated_at(const ModelParams& p, const SimGrid& g,
                                          double y_bar,
                                          const std::vector<std::size_t>& obs_idx,
                                          RandomStream& rng);

}  // namespace ah
