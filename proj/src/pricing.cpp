#include "ah/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ah/parallel.hpp"
#include "ah/special_functions.hpp"
#include "ah/stats.hpp"

namespace ah {

double black_price(double forward, double strike, double maturity, double vol,
                   OptionKind kind) {
    if (!(forward > 0.0) || !(strike > 0.0) || !(maturity > 0.0))
        throw std::invalid_argument("black_price: forward, strike, maturity must be positive");
    if (vol < 0.0) throw std::invalid_argument("black_price: vol must be >= 0");
    const double call_intrinsic = std::max(forward - strike, 0.0);
    if (vol == 0.0)
        return kind == OptionKind::Call ? call_intrinsic
                                        : std::max(strike - forward, 0.0);
    const double sq = vol * std::sqrt(maturity);
    const double d1 = (std::log(forward / strike) + 0.5 * sq * sq) / sq;
    const double d2 = d1 - sq;
    const double call = forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return kind == OptionKind::Call ? call : call - forward + strike;
}

double black_vega(double forward, double strike, double maturity, double vol) {
    if (vol <= 0.0) return 0.0;
    const double sq = vol * std::sqrt(maturity);
    const double d1 = (std::log(forward / strike) + 0.5 * sq * sq) / sq;
    return forward * norm_pdf(d1) * std::sqrt(maturity);
}

double implied_vol(double price, double forward, double strike, double maturity) {
    if (!(forward > 0.0) || !(strike > 0.0) || !(maturity > 0.0))
        throw std::invalid_argument("implied_vol: forward, strike, maturity must be positive");
    const double intrinsic = std::max(forward - strike, 0.0);
    if (price < intrinsic)
        throw std::domain_error("implied_vol: price below intrinsic bound");
    if (price >= forward)
        throw std::domain_error("implied_vol: price at or above the forward bound");
    if (price == intrinsic) return 0.0;

    double lo = 0.0;
    double hi = 0.5;
    while (black_price(forward, strike, maturity, hi, OptionKind::Call) < price) {
        hi *= 2.0;
        if (hi > 1e4) throw std::domain_error("implied_vol: no solution below vol 1e4");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (black_price(forward, strike, maturity, mid, OptionKind::Call) < price)
            lo = mid;
        else
            hi = mid;
    }
    double vol = 0.5 * (lo + hi);
    const double vega = black_vega(forward, strike, maturity, vol);
    if (vega > 1e-14) {
        const double diff = black_price(forward, strike, maturity, vol, OptionKind::Call) - price;
        const double polished = vol - diff / vega;
        if (polished > lo - 1e-10 && polished < hi + 1e-10) vol = polished;
    }
    return vol;
}

std::vector<double> simulate_underlying_terminals(const ModelParams& p, const SimGrid& g,
                                                  Underlying underlying,
                                                  std::size_t n_paths,
                                                  const RandomStream& master,
                                                  int n_threads) {
    p.validate();
    g.validate();
    std::vector<double> out(n_paths);
    parallel_blocks(n_paths, n_threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RandomStream rng = master.substream(i);
            if (underlying == Underlying::Asset) {
                out[i] = std::exp(simulate_joint_terminal(p, g, rng).log_s);
            } else {
                out[i] = simulate_v_terminal(p, g, rng);
            }
        }
    });
    return out;
}

namespace {

PriceEstimate payoff_mean(const std::vector<double>& terminals, double strike,
                          OptionKind kind, double discount) {
    RunningStat acc;
    for (const double x : terminals) {
        const double payoff =
            kind == OptionKind::Call ? std::max(x - strike, 0.0) : std::max(strike - x, 0.0);
        if (std::isnan(payoff))
            throw std::runtime_error("mc_price: NaN payoff encountered");
        acc.add(discount * payoff);
    }
    return {acc.mean(), acc.std_error(), acc.count()};
}

}  // namespace

PriceEstimate mc_price(const OptionSpec& spec, const ModelParams& p, std::size_t n_paths,
                       const SimGrid& g, const RandomStream& master, int n_threads) {
    spec.validate();
    if (n_paths < 1000)
        throw std::invalid_argument("mc_price: need at least 1000 paths");
    if (g.t_end != spec.maturity)
        throw std::invalid_argument("mc_price: grid horizon must equal the option maturity");
    const auto terminals =
        simulate_underlying_terminals(p, g, spec.underlying, n_paths, master, n_threads);
    const double discount =
        spec.underlying == Underlying::Asset ? std::exp(-p.r * spec.maturity) : 1.0;
    const double strike = std::exp(spec.strike_log);

    // In-the-money sides are priced through put-call parity off the bounded
    // out-of-the-money payoff: the ITM payoff carries the heavy V-tail and
    // its sample error dwarfs the OTM side's. The forward is analytic: the
    // scheme's discounted price is a martingale and E[V_T] is affine.
    const double forward =
        spec.underlying == Underlying::Asset
            ? p.s0 * std::exp(p.r * spec.maturity)
            : p.v0 * std::exp(-p.a * spec.maturity) +
                  p.b * (1.0 - std::exp(-p.a * spec.maturity));
    if (spec.kind == OptionKind::Call && strike <= forward) {
        PriceEstimate put = payoff_mean(terminals, strike, OptionKind::Put, discount);
        put.value += discount * (forward - strike);
        return put;
    }
    if (spec.kind == OptionKind::Put && strike > forward) {
        PriceEstimate call = payoff_mean(terminals, strike, OptionKind::Call, discount);
        call.value -= discount * (forward - strike);
        return call;
    }
    return payoff_mean(terminals, strike, spec.kind, discount);
}

SmileCurve smile(const ModelParams& p, const SimGrid& g, const std::vector<double>& k_grid,
                 Underlying underlying, std::size_t n_paths, const RandomStream& master,
                 int n_threads) {
    const auto terminals =
        simulate_underlying_terminals(p, g, underlying, n_paths, master, n_threads);
    // Forward: known for the asset, Monte Carlo mean of V_T for the variance.
    const double known_forward =
        underlying == Underlying::Asset ? p.s0 * std::exp(p.r * g.t_end) : -1.0;
    return smile_from_terminals(terminals, known_forward, g.t_end, k_grid);
}

SmileCurve smile_from_terminals(const std::vector<double>& terminals, double known_forward,
                                double maturity, const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw std::invalid_argument("smile: k_grid must be nonempty");
    if (terminals.empty()) throw std::invalid_argument("smile: empty terminal sample");
    const double T = maturity;

    double forward = known_forward;
    if (!(forward > 0.0)) {
        RunningStat acc;
        for (double v : terminals) acc.add(v);
        forward = acc.mean();
    }

    std::vector<double> ks = k_grid;
    std::sort(ks.begin(), ks.end());

    SmileCurve curve;
    curve.maturity = T;
    curve.forward = forward;
    for (const double k : ks) {
        const double strike = std::exp(k);
        const OptionKind otm = strike >= forward ? OptionKind::Call : OptionKind::Put;
        const PriceEstimate est = payoff_mean(terminals, strike, otm, 1.0);
        // OTM intrinsic is zero: anything within noise of it cannot be inverted
        if (est.value <= 2.0 * est.std_err) {
            curve.excluded_ks.push_back(k);
            continue;
        }
        // put-call parity (undiscounted): C = P + F - K
        const double call_price =
            otm == OptionKind::Call ? est.value : est.value + forward - strike;
        if (call_price >= forward || call_price < std::max(forward - strike, 0.0)) {
            curve.excluded_ks.push_back(k);
            continue;
        }
        SmilePoint pt;
        pt.k = k;
        pt.price = est.value;
        pt.price_se = est.std_err;
        pt.implied_vol = implied_vol(call_price, forward, strike, T);
        const double vega = black_vega(forward, strike, T, pt.implied_vol);
        pt.iv_se = vega > 0.0 ? est.std_err / vega : 0.0;
        curve.points.push_back(pt);
    }
    return curve;
}

WingFit wing_regression(const SmileCurve& curve, Underlying underlying, WingSide side,
                        int n_tail_points) {
    if (n_tail_points < 4)
        throw std::invalid_argument("wing_regression: need at least 4 tail points");
    std::vector<const SmilePoint*> pts;
    for (const auto& pt : curve.points) pts.push_back(&pt);
    if (static_cast<int>(pts.size()) < n_tail_points)
        throw std::invalid_argument("wing_regression: not enough valid smile points");
    // points are sorted by k; take the outermost block on the requested side
    std::vector<double> x, y;
    for (int i = 0; i < n_tail_points; ++i) {
        const SmilePoint* pt =
            side == WingSide::Left ? pts[static_cast<std::size_t>(i)]
                                   : pts[pts.size() - 1 - static_cast<std::size_t>(i)];
        const double ak = std::fabs(pt->k);
        if (underlying == Underlying::Asset) {
            x.push_back(ak);
            y.push_back(pt->implied_vol * pt->implied_vol);
        } else {
            x.push_back(std::sqrt(ak));
            y.push_back(pt->implied_vol);
        }
    }
    const LineFit fit = fit_line(x, y);
    return {fit.slope, fit.slope_se, n_tail_points};
}

}  // namespace ah
