#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ah {

// Streaming mean/variance (Welford). Reductions over paths always run in
// path-index order so results do not depend on the thread count.
class RunningStat {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// One-sample KS against a continuous CDF. `sample` is modified (sorted).
KsResult ks_test(std::vector<double>& sample, const std::function<double(double)>& cdf);

// Two-sample KS. Both samples are sorted in place.
KsResult ks_two_sample(std::vector<double>& a, std::vector<double>& b);

// Anderson-Darling A^2 against a fully specified continuous CDF.
double anderson_darling(std::vector<double>& sample, const std::function<double(double)>& cdf);

// Chi-square goodness of fit of observed counts vs expected counts. Bins with
// expected < min_expected are pooled from the right. Returns {stat, p}.
struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int dof = 0;
};
GofResult chi2_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                   double min_expected = 5.0);

// Mann-Whitney rank-sum test (normal approximation); returns two-sided p.
double mann_whitney_p(std::vector<double>& a, std::vector<double>& b);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ah
