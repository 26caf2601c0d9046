#include "ah/sde.hpp"

#include <algorithm>
#include <stdexcept>

namespace ah {

namespace detail {

JumpScheme make_jump_scheme(const ModelParams& p, double small_jump_cutoff, double y_bar_hi) {
    JumpScheme js;
    if (p.sigma_n <= 0.0) return js;

    js.sigma_n = p.sigma_n;
    if (p.alpha.is_gaussian()) {
        // Z is sqrt(2) x Brownian motion: the whole jump term is diffusion.
        js.active = true;
        js.alpha = 2.0;
        js.gauss_var = 2.0 * p.sigma_n * p.sigma_n;
        return js;
    }

    const double eps_bar = small_jump_cutoff / p.sigma_n;
    if (!(eps_bar > 0.0))
        throw std::invalid_argument("jump scheme: small_jump_cutoff must be positive");
    js.active = true;
    js.alpha = p.alpha.alpha;
    js.eps_bar = eps_bar;
    js.band_hi = y_bar_hi;

    const double gauss_edge = std::min(eps_bar, y_bar_hi);
    js.gauss_var =
        p.sigma_n * p.sigma_n * levy_truncated_second_moment(p.alpha, gauss_edge);
    if (y_bar_hi > eps_bar) {
        const double tail_lo = levy_tail_mass(p.alpha, eps_bar);
        const double theta_lo = theta_compensator(p.alpha, eps_bar);
        if (std::isfinite(y_bar_hi)) {
            js.band_rate = tail_lo - levy_tail_mass(p.alpha, y_bar_hi);
            js.comp_drift = p.sigma_n * (theta_lo - theta_compensator(p.alpha, y_bar_hi));
            js.trunc_frac = 1.0 - std::pow(eps_bar / y_bar_hi, p.alpha.alpha);
        } else {
            js.band_rate = tail_lo;
            js.comp_drift = p.sigma_n * theta_lo;
        }
    }
    return js;
}

std::vector<double> uniform_times(const SimGrid& g) {
    std::vector<double> t(static_cast<std::size_t>(g.n_steps) + 1);
    const double dt = g.dt();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = dt * static_cast<double>(i);
    t.back() = g.t_end;
    return t;
}

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void check_step(const ModelParams& p, const SimGrid& g, double drift_a) {
    p.validate();
    g.validate();
    if (drift_a * g.dt() >= 1.0)
        throw std::invalid_argument("simulate: a*dt must be below 1; refine the grid");
}

struct PathObserver {
    VPath* out;
    void operator()(std::size_t i, double v, double, double) const {
        out->values[i] = v;
    }
};

}  // anonymous namespace

}  // namespace detail

VPath simulate_v_path(const ModelParams& p, const SimGrid& g, RandomStream& rng) {
    detail::check_step(p, g, p.a);
    VPath path;
    path.times = detail::uniform_times(g);
    path.values.resize(path.times.size());
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, detail::kInf);
    detail::run_affine_scheme<false>(p, path.times, p.v0, js, p.a, p.b, false, rng,
                                     detail::PathObserver{&path}, &path);
    return path;
}

JointPath simulate_joint_path(const ModelParams& p, const SimGrid& g, RandomStream& rng) {
    detail::check_step(p, g, p.a);
    JointPath jp;
    jp.vpath.times = detail::uniform_times(g);
    const std::size_t n = jp.vpath.times.size();
    jp.vpath.values.resize(n);
    jp.log_s.resize(n);
    jp.int_v.resize(n);
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, detail::kInf);
    auto obs = [&jp](std::size_t i, double v, double ls, double iv) {
        jp.vpath.values[i] = v;
        jp.log_s[i] = ls;
        jp.int_v[i] = iv;
    };
    detail::run_affine_scheme<true>(p, jp.vpath.times, p.v0, js, p.a, p.b, false, rng, obs,
                                    &jp.vpath);
    return jp;
}

VPath simulate_cb_path(double u0, const ModelParams& p, const SimGrid& g,
                       RandomStream& rng) {
    return simulate_cb_on_times(u0, p, detail::uniform_times(g), g.small_jump_cutoff, rng);
}

VPath simulate_cb_on_times(double u0, const ModelParams& p, std::vector<double> times,
                           double small_jump_cutoff, RandomStream& rng) {
    if (!(u0 > 0.0)) throw std::invalid_argument("simulate_cb: u0 must be positive");
    if (times.size() < 2) throw std::invalid_argument("simulate_cb: need at least one step");
    p.validate();
    VPath path;
    path.times = std::move(times);
    path.values.resize(path.times.size());
    const auto js = detail::make_jump_scheme(p, small_jump_cutoff, detail::kInf);
    detail::run_affine_scheme<false>(p, path.times, u0, js, p.a, 0.0, true, rng,
                                     detail::PathObserver{&path}, &path);
    return path;
}

VPath simulate_truncated_path(const ModelParams& p, const SimGrid& g, double y_bar,
                              RandomStream& rng) {
    const auto eff = effective_params(p.a, p.b, p.sigma_n, p.alpha, y_bar);
    detail::check_step(p, g, eff.a_tilde);
    VPath path;
    path.times = detail::uniform_times(g);
    path.values.resize(path.times.size());
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, y_bar);
    detail::run_affine_scheme<false>(p, path.times, p.v0, js, eff.a_tilde, eff.b_tilde,
                                     false, rng, detail::PathObserver{&path}, &path);
    return path;
}

double simulate_v_terminal(const ModelParams& p, const SimGrid& g, RandomStream& rng) {
    detail::check_step(p, g, p.a);
    const auto times = detail::uniform_times(g);
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, detail::kInf);
    double last = p.v0;
    auto obs = [&last](std::size_t, double v, double, double) { last = v; };
    detail::run_affine_scheme<false>(p, times, p.v0, js, p.a, p.b, false, rng, obs, nullptr);
    return last;
}

JointTerminal simulate_joint_terminal(const ModelParams& p, const SimGrid& g,
                                      RandomStream& rng) {
    detail::check_step(p, g, p.a);
    const auto times = detail::uniform_times(g);
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, detail::kInf);
    JointTerminal out;
    auto obs = [&out](std::size_t, double v, double ls, double iv) {
        out.v = v;
        out.log_s = ls;
        out.int_v = iv;
    };
    detail::run_affine_scheme<true>(p, times, p.v0, js, p.a, p.b, false, rng, obs, nullptr);
    return out;
}

namespace {

std::vector<double> run_with_observations(const ModelParams& p, const SimGrid& g,
                                          const std::vector<std::size_t>& obs_idx,
                                          double drift_a, double drift_b, double band_hi,
                                          RandomStream& rng) {
    const auto times = detail::uniform_times(g);
    const auto js = detail::make_jump_scheme(p, g.small_jump_cutoff, band_hi);
    std::vector<double> out(obs_idx.size());
    std::size_t next = 0;
    auto obs = [&](std::size_t i, double v, double, double) {
        while (next < obs_idx.size() && obs_idx[next] == i) out[next++] = v;
    };
    detail::run_affine_scheme<false>(p, times, p.v0, js, drift_a, drift_b, false, rng, obs,
                                     nullptr);
    return out;
}

}  // namespace

std::vector<double> simulate_v_at(const ModelParams& p, const SimGrid& g,
                                  const std::vector<std::size_t>& obs_idx,
                                  RandomStream& rng) {
    detail::check_step(p, g, p.a);
    return run_with_observations(p, g, obs_idx, p.a, p.b, detail::kInf, rng);
}

std::vector<double> simulate_truncated_at(const ModelParams& p, const SimGrid& g,
                                          double y_bar,
                                          const std::vector<std::size_t>& obs_idx,
                                          RandomStream& rng) {
    const auto eff = effective_params(p.a, p.b, p.sigma_n, p.alpha, y_bar);
    detail::check_step(p, g, eff.a_tilde);
    return run_with_observations(p, g, obs_idx, eff.a_tilde, eff.b_tilde, y_bar, rng);
}

}  // namespace ah
