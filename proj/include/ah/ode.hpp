#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace ah {

// Outcome of the per-step acceptance hook.
enum class StepVerdict {
    Accept,     // take the step
    Reject,     // shrink the step and retry
    Terminate,  // stop the integration with an error from the hook
};

template <std::size_t N>
struct OdeResult {
    std::array<std::complex<double>, N> y{};
    long n_steps = 0;
    double est_error = 0.0;  // accumulated accepted local error estimates
};

// Adaptive Dormand-Prince 5(4) for a small complex system. The hook sees
// each proposed state before acceptance and can reject it (e.g. to keep a
// flow inside an invariant cone) or terminate. If rejections push the step
// size below h_min the hook's on_stall callback decides what to throw.
template <std::size_t N>
class Rk45 {
public:
    using State = std::array<std::complex<double>, N>;
    using Rhs = std::function<State(double, const State&)>;
    using Hook = std::function<StepVerdict(double, State&)>;

    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 2000000;

    OdeResult<N> solve(const Rhs& f, State y0, double t0, double t1,
                       const Hook& hook = nullptr,
                       const std::function<void(double)>& on_stall = nullptr) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        OdeResult<N> out;
        State y = y0;
        double t = t0;
        const double span = t1 - t0;
        if (!(span > 0.0)) {
            out.y = y;
            return out;
        }
        double h = span / 64.0;
        const double h_min = span * 1e-14;
        State k1 = f(t, y);
        while (t < t1) {
            if (out.n_steps++ > max_steps)
                throw std::runtime_error("Rk45: step budget exceeded");
            if (t + h > t1) h = t1 - t;

            State y2, y3, y4, y5, y6, y7;
            for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * (a21 * k1[i]);
            const State k2 = f(t + c2 * h, y2);
            for (std::size_t i = 0; i < N; ++i)
                y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            const State k3 = f(t + c3 * h, y3);
            for (std::size_t i = 0; i < N; ++i)
                y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            const State k4 = f(t + c4 * h, y4);
            for (std::size_t i = 0; i < N; ++i)
                y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            const State k5 = f(t + c5 * h, y5);
            for (std::size_t i = 0; i < N; ++i)
                y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                    a64 * k4[i] + a65 * k5[i]);
            const State k6 = f(t + h, y6);
            for (std::size_t i = 0; i < N; ++i)
                y7[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                    b6 * k6[i]);
            const State k7 = f(t + h, y7);

            double err = 0.0;
            bool finite = true;
            for (std::size_t i = 0; i < N; ++i) {
                const std::complex<double> ei =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                         e6 * k6[i] + e7 * k7[i]);
                const double scale =
                    abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y7[i]));
                err = std::max(err, std::abs(ei) / scale);
                if (!std::isfinite(y7[i].real()) || !std::isfinite(y7[i].imag()))
                    finite = false;
            }

            StepVerdict verdict = StepVerdict::Accept;
            if (finite && err <= 1.0 && hook) {
                verdict = hook(t + h, y7);
                if (verdict == StepVerdict::Terminate) {
                    out.y = y7;
                    return out;
                }
            }

            if (finite && err <= 1.0 && verdict == StepVerdict::Accept) {
                t += h;
                y = y7;
                k1 = k7;  // FSAL
                out.est_error += err * rel_tol;
                const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h *= std::min(5.0, std::max(0.2, grow));
            } else {
                const double shrink =
                    finite ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
                h *= std::min(0.5, shrink);
                if (h < h_min) {
                    if (on_stall) on_stall(t);
                    throw std::runtime_error("Rk45: step size underflow");
                }
            }
        }
        out.y = y;
        return out;
    }
};

}  // namespace ah
