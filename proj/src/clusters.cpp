#include "ah/clusters.hpp"

#include <algorithm>
#include <cmath>

#include "ah/parallel.hpp"
#include "ah/quadrature.hpp"
#include "ah/special_functions.hpp"
#include "ah/stats.hpp"

namespace ah {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

VPath simulate_fundamental(const ModelParams& p, const ClusterConfig& c, RandomStream& rng) {
    c.validate();
    if (!(p.sigma_n > 0.0))
        throw std::invalid_argument("simulate_fundamental: needs sigma_n > 0");
    return simulate_truncated_path(p, c.grid, c.threshold.y_bar, rng);
}

std::vector<MotherJump> sample_mother_jumps(const VPath& fundamental, const ClusterConfig& c,
                                            StabilityIndex alpha, double sigma_n,
                                            RandomStream& rng) {
    if (fundamental.values.size() < 2)
        throw std::invalid_argument("sample_mother_jumps: empty fundamental path");
    (void)sigma_n;
    std::vector<MotherJump> mothers;
    const double v_max =
        *std::max_element(fundamental.values.begin(), fundamental.values.end());
    if (!(v_max > 0.0)) return mothers;

    const double rate = levy_tail_mass(alpha, c.threshold.y_bar);
    const double t_end = fundamental.times.back();
    const double dt = fundamental.times[1] - fundamental.times[0];
    const double envelope = rate * v_max;

    double t = 0.0;
    for (;;) {
        t += rng.exponential() / envelope;
        if (t >= t_end) break;
        const auto idx = std::min(static_cast<std::size_t>(t / dt),
                                  fundamental.values.size() - 2);
        const double v_left = fundamental.values[idx];
        if (rng.uniform() * v_max < v_left)
            mothers.push_back({t, sample_jump_size(alpha, c.threshold.y, rng)});
    }
    return mothers;
}

double sample_jump_size(StabilityIndex alpha, double y, RandomStream& rng) {
    if (!(y > 0.0)) throw std::invalid_argument("sample_jump_size: y must be positive");
    return rng.pareto(alpha.alpha, y);
}

Decomposition build_decomposition(const ModelParams& p, const ClusterConfig& c,
                                  const RandomStream& rng) {
    c.validate();
    Decomposition d;
    RandomStream fund_stream = rng.substream(0);
    d.fundamental = simulate_fundamental(p, c, fund_stream);
    RandomStream mother_stream = rng.substream(1);
    const auto mothers =
        sample_mother_jumps(d.fundamental, c, p.alpha, p.sigma_n, mother_stream);

    const double dt = c.grid.dt();
    const double t_end = c.grid.t_end;
    const double cap = c.duration_cap_factor / std::max(p.a, 1e-8);

    d.composed = d.fundamental;
    for (std::size_t n = 0; n < mothers.size(); ++n) {
        const MotherJump& m = mothers[n];
        // offsets 0, (first grid point after T_n) - T_n, then dt steps until
        // both the grid end and the duration cap are covered
        const auto i0 = static_cast<std::size_t>(std::floor(m.time / dt)) + 1;
        const double first = static_cast<double>(i0) * dt - m.time;
        const double horizon = std::max(cap, t_end - m.time) + dt;
        std::vector<double> offsets;
        offsets.reserve(static_cast<std::size_t>(horizon / dt) + 3);
        offsets.push_back(0.0);
        for (double o = first; o <= horizon; o += dt) offsets.push_back(o);

        RandomStream cluster_stream = rng.substream(2 + n);
        ClusterRecord rec;
        rec.mother = m;
        rec.path = simulate_cb_on_times(m.size, p, std::move(offsets),
                                        c.grid.small_jump_cutoff, cluster_stream);
        rec.capped = !rec.path.absorbed;
        rec.duration = rec.capped ? cap : rec.path.absorption_time;
        // add the cluster onto the composed path: offset index 1+j sits at
        // grid index i0+j
        for (std::size_t j = 1; j < rec.path.values.size(); ++j) {
            const std::size_t gi = i0 + j - 1;
            if (gi >= d.composed.values.size()) break;
            d.composed.values[gi] += rec.path.values[j];
        }
        // ledger: the mother jump itself plus the cluster's internal jumps
        d.composed.jumps.push_back({m.time, m.size});
        d.composed.total_jump_mass += m.size;
        for (const auto& je : rec.path.jumps) {
            d.composed.jumps.push_back({m.time + je.time, je.size});
            d.composed.total_jump_mass += je.size;
        }
        d.clusters.push_back(std::move(rec));
    }
    std::sort(d.composed.jumps.begin(), d.composed.jumps.end(),
              [](const JumpEvent& a, const JumpEvent& b) { return a.time < b.time; });
    return d;
}

double expected_cluster_count(double t, const ModelParams& p, const ClusterConfig& c) {
    if (t < 0.0) throw std::invalid_argument("expected_cluster_count: t must be >= 0");
    c.validate();
    const double al = p.alpha.alpha;
    const auto eff = effective_params(p.a, p.b, p.sigma_n, p.alpha, c.threshold.y_bar);
    const double prefactor =
        (1.0 - al) * std::pow(p.sigma_n, al) /
        (std::cos(0.5 * kPi * al) * std::tgamma(2.0 - al) * std::pow(c.threshold.y, al));
    const double integrated_mean =
        eff.b_tilde * t +
        (p.v0 - eff.b_tilde) * (1.0 - std::exp(-eff.a_tilde * t)) / eff.a_tilde;
    return prefactor * integrated_mean;
}

namespace {

// int_y^inf (1 - e^{-zeta z}) zeta^{-1-alpha} dzeta. For yz >= 1 use
// y^{-alpha}/alpha - z^alpha Gamma(-alpha, yz) with Gamma(-alpha,.) obtained
// from the positive-parameter incomplete gamma by downward recurrence; the
// subtraction cancels catastrophically for small yz, where the substituted
// quadrature z^alpha int_{yz}^inf (1-e^{-s}) s^{-1-alpha} ds is used instead.
double inner_duration_integral(double z, double y, double alpha) {
    if (z <= 0.0) return 0.0;
    const double x = y * z;
    if (x >= 1.0) {
        const double g2 = std::tgamma(2.0 - alpha) * gamma_q(2.0 - alpha, x);
        const double ex = std::exp(-x);
        const double g1 = (g2 - std::pow(x, 1.0 - alpha) * ex) / (1.0 - alpha);
        const double g0 = (g1 - std::pow(x, -alpha) * ex) / (-alpha);
        return std::pow(y, -alpha) / alpha - std::pow(z, alpha) * g0;
    }
    const auto f = [alpha](double s) {
        return -std::expm1(-s) * std::pow(s, -1.0 - alpha);
    };
    return std::pow(z, alpha) * integrate_upper(f, x, 1e-13, 1e-10).value;
}

}  // namespace

double expected_cluster_duration(const ModelParams& p, const ClusterConfig& c) {
    c.validate();
    if (p.sigma == 0.0 && p.sigma_n == 0.0)
        throw std::domain_error("expected_cluster_duration: Grey's condition fails");
    const double y = c.threshold.y;
    const double al = p.alpha.alpha;
    const BranchingParams bp = p.branching();
    const auto outer = [&](double z) {
        return inner_duration_integral(z, y, al) / psi_alpha(z, bp);
    };
    return al * std::pow(y, al) * integrate_upper(outer, 0.0, 1e-11, 1e-9).value;
}

double duration_tail_bound(double t, const ModelParams& p, const ClusterConfig& c,
                           double q1) {
    if (!(t > 1.0)) throw std::invalid_argument("duration_tail_bound: valid for t > 1 only");
    if (!(q1 > 0.0)) throw std::invalid_argument("duration_tail_bound: q1 must be positive");
    const double al = p.alpha.alpha;
    return al * c.threshold.y / (al - 1.0) * q1 * std::exp(-p.a * (t - 1.0));
}

PoissonLimitReport poisson_limit_experiment(long n, double c_scale, double t,
                                            const ModelParams& p, long n_reps,
                                            const RandomStream& master,
                                            long steps_per_unit, double small_jump_cutoff,
                                            int n_threads) {
    if (n < 10) throw std::invalid_argument("poisson_limit_experiment: n must be >= 10");
    if (n_reps < 1000)
        throw std::invalid_argument("poisson_limit_experiment: n_reps must be >= 1000");
    if (!(c_scale > 0.0) || !(t > 0.0))
        throw std::invalid_argument("poisson_limit_experiment: c, t must be positive");
    if (p.alpha.is_gaussian())
        throw std::invalid_argument("poisson_limit_experiment: requires alpha < 2");

    const double al = p.alpha.alpha;
    PoissonLimitReport rep;
    rep.lambda = -std::pow(p.sigma_n, al) * p.b /
                 (al * std::cos(0.5 * kPi * al) * gamma_neg(al) * std::pow(c_scale, al));
    rep.lambda_t = rep.lambda * t;

    const double y_n = c_scale * std::pow(static_cast<double>(n), 1.0 / al);
    ClusterConfig cfg{JumpThreshold::absolute(y_n, p.sigma_n), SimGrid{}, 50.0};
    cfg.grid.t_end = static_cast<double>(n) * t;
    cfg.grid.n_steps = static_cast<long>(std::ceil(cfg.grid.t_end)) * steps_per_unit;
    cfg.grid.small_jump_cutoff =
        small_jump_cutoff > 0.0 ? small_jump_cutoff : 1e-2 * p.sigma_n;

    rep.counts.assign(static_cast<std::size_t>(n_reps), 0);
    parallel_blocks(static_cast<std::size_t>(n_reps), n_threads,
                    [&](std::size_t begin, std::size_t end) {
                        for (std::size_t r = begin; r < end; ++r) {
                            RandomStream rng = master.substream(r);
                            RandomStream fund = rng.substream(0);
                            const VPath path = simulate_fundamental(p, cfg, fund);
                            RandomStream moth = rng.substream(1);
                            rep.counts[r] = static_cast<long>(
                                sample_mother_jumps(path, cfg, p.alpha, p.sigma_n, moth)
                                    .size());
                        }
                    });

    long max_count = 0;
    double sum = 0.0;
    for (long k : rep.counts) {
        max_count = std::max(max_count, k);
        sum += static_cast<double>(k);
    }
    rep.mean_count = sum / static_cast<double>(n_reps);

    rep.pmf_empirical.assign(static_cast<std::size_t>(max_count) + 2, 0.0);
    for (long k : rep.counts)
        rep.pmf_empirical[static_cast<std::size_t>(k)] += 1.0 / static_cast<double>(n_reps);
    rep.pmf_target.resize(rep.pmf_empirical.size());
    double pk = std::exp(-rep.lambda_t);
    double tail = 1.0;
    for (std::size_t k = 0; k + 1 < rep.pmf_target.size(); ++k) {
        rep.pmf_target[k] = pk;
        tail -= pk;
        pk *= rep.lambda_t / static_cast<double>(k + 1);
    }
    rep.pmf_target.back() = std::max(tail, 0.0);  // pooled upper tail

    std::vector<double> observed(rep.pmf_empirical.size()), expected(rep.pmf_target.size());
    for (std::size_t k = 0; k < observed.size(); ++k) {
        observed[k] = rep.pmf_empirical[k] * static_cast<double>(n_reps);
        expected[k] = rep.pmf_target[k] * static_cast<double>(n_reps);
    }
    const GofResult gof = chi2_gof(observed, expected, 5.0);
    rep.chi2_stat = gof.statistic;
    rep.chi2_p = gof.p_value;
    rep.chi2_dof = gof.dof;
    return rep;
}

}  // namespace ah
