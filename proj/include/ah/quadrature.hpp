#pragma once

#include <functional>

namespace ah {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int segments = 0;
};

// Globally adaptive Gauss-Kronrod (G7,K15) on a finite interval. Splits the
// segment with the largest error estimate until
// sum(err) <= max(abs_tol, rel_tol * |value|) or the segment budget is hit.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, double rel_tol = 1e-8,
                           int max_segments = 4000);

// Integral over (a, infinity) via the substitution z = a + e^w - 1, which
// turns power-law tails into exponentially decaying integrands in w. The
// upper limit in w is grown until the local contribution is negligible.
QuadratureResult integrate_upper(const std::function<double(double)>& f, double a,
                                 double abs_tol = 1e-10, double rel_tol = 1e-8);

}  // namespace ah
