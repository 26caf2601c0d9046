#include "ah/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ah/special_functions.hpp"

namespace ah {

double RunningStat::std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

namespace {
double ks_p_from_stat(double d, double n_eff) {
    const double sn = std::sqrt(n_eff);
    return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
}
}  // namespace

KsResult ks_test(std::vector<double>& sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double z = cdf(sample[i]);
        d = std::max(d, std::fabs(z - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - z));
    }
    return {d, ks_p_from_stat(d, n)};
}

KsResult ks_two_sample(std::vector<double>& a, std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, ks_p_from_stat(d, n_eff)};
}

double anderson_darling(std::vector<double>& sample, const std::function<double(double)>& cdf) {
    if (sample.size() < 8) throw std::invalid_argument("anderson_darling: sample too small");
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z1 = cdf(sample[i]);
        double z2 = cdf(sample[n - 1 - i]);
        z1 = std::min(std::max(z1, 1e-300), 1.0 - 1e-16);
        z2 = std::min(std::max(z2, 1e-300), 1.0 - 1e-16);
        s += (2.0 * static_cast<double>(i) + 1.0) * (std::log(z1) + std::log1p(-z2));
    }
    return -static_cast<double>(n) - s / static_cast<double>(n);
}

GofResult chi2_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                   double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_gof: size mismatch");
    // Pool sparse cells from the right so every cell has a usable expectation.
    std::vector<double> obs, exp;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= min_expected) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (o_acc > 0.0 || e_acc > 0.0) {
        if (exp.empty()) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
        } else {
            obs.back() += o_acc;
            exp.back() += e_acc;
        }
    }
    if (exp.size() < 2) return {0.0, 1.0, 0};
    double stat = 0.0;
    for (std::size_t i = 0; i < exp.size(); ++i) {
        const double d = obs[i] - exp[i];
        stat += d * d / exp[i];
    }
    const int dof = static_cast<int>(exp.size()) - 1;
    return {stat, chi2_sf(stat, static_cast<double>(dof)), dof};
}

double mann_whitney_p(std::vector<double>& a, std::vector<double>& b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_p: empty sample");
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(a.size() + b.size());
    for (double x : a) pooled.emplace_back(x, 0);
    for (double x : b) pooled.emplace_back(x, 1);
    std::sort(pooled.begin(), pooled.end());
    // midranks with tie handling
    double rank_sum_a = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1].first == pooled[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        i = j + 1;
    }
    const double u = rank_sum_a - na * (na + 1.0) / 2.0;
    const double mu = na * nb / 2.0;
    const double sigma = std::sqrt(na * nb * (na + nb + 1.0) / 12.0);
    const double z = (u - mu) / sigma;
    return 2.0 * (1.0 - norm_cdf(std::fabs(z)));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() > 2) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += r * r;
        }
        fit.slope_se = std::sqrt(ss_res / (n - 2.0) / sxx);
    }
    return fit;
}

}  // namespace ah
