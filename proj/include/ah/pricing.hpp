#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ah/model.hpp"
#include "ah/rng.hpp"
#include "ah/sde.hpp"

namespace ah {

enum class Underlying { Asset, Variance };
enum class OptionKind { Call, Put };

struct OptionSpec {
    Underlying underlying = Underlying::Asset;
    OptionKind kind = OptionKind::Call;
    double strike_log = 0.0;  // k, strike K = e^k
    double maturity = 1.0;

    void validate() const {
        if (!(maturity > 0.0))
            throw std::invalid_argument("OptionSpec: maturity must be positive");
    }
};

struct PriceEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::size_t n_paths = 0;
};

struct SmilePoint {
    double k = 0.0;
    double price = 0.0;     // undiscounted (forward) OTM price used for inversion
    double price_se = 0.0;
    double implied_vol = 0.0;
    double iv_se = 0.0;     // delta-method band: price SE / Black vega
};

struct SmileCurve {
    double maturity = 0.0;
    double forward = 0.0;
    std::vector<SmilePoint> points;       // sorted by k, successfully inverted
    std::vector<double> excluded_ks;      // price within 2 SE of intrinsic
};

// Undiscounted Black prices on the forward; vol = 0 returns intrinsic.
double black_price(double forward, double strike, double maturity, double vol,
                   OptionKind kind);
double black_vega(double forward, double strike, double maturity, double vol);

// Black implied volatility from an undiscounted CALL price: bisection to
// 1e-10 followed by one Newton polish. Throws std::domain_error naming the
// violated bound when the price is outside [intrinsic, forward).
double implied_vol(double price, double forward, double strike, double maturity);

// Terminal sample of the underlying (asset price or variance level) at
// g.t_end, one derived stream per path index. The same batch backs every
// strike of a smile (common random numbers).
std::vector<double> simulate_underlying_terminals(const ModelParams& p, const SimGrid& g,
                                                  Underlying underlying,
                                                  std::size_t n_paths,
                                                  const RandomStream& master,
                                                  int n_threads = 1);

// Monte Carlo option price. Asset options are discounted at e^{-rT}; variance
// options are plain expectations of the payoff on V_T.
PriceEstimate mc_price(const OptionSpec& spec, const ModelParams& p, std::size_t n_paths,
                       const SimGrid& g, const RandomStream& master, int n_threads = 1);

// Smile over a log-strike grid: one common terminal batch, OTM-side prices,
// put prices converted through parity before call-convention inversion.
// Points with OTM price within 2 SE of intrinsic (zero) are excluded.
SmileCurve smile(const ModelParams& p, const SimGrid& g, const std::vector<double>& k_grid,
                 Underlying underlying, std::size_t n_paths, const RandomStream& master,
                 int n_threads = 1);

// Same construction on an existing terminal batch. known_forward <= 0 uses
// the sample mean as the forward (the variance-option convention).
SmileCurve smile_from_terminals(const std::vector<double>& terminals, double known_forward,
                                double maturity, const std::vector<double>& k_grid);

enum class WingSide { Left, Right };

struct WingFit {
    double slope = 0.0;
    double slope_se = 0.0;
    int n_points = 0;
};

// Least-squares wing slope over the outermost n_tail_points of the curve:
// Sigma^2 against |k| for asset smiles, Sigma against sqrt(|k|) for variance
// smiles.
WingFit wing_regression(const SmileCurve& curve, Underlying underlying, WingSide side,
                        int n_tail_points);

}  // namespace ah
