#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ah/levy.hpp"
#include "ah/quadrature.hpp"
#include "ah/special_functions.hpp"
#include "ah/stats.hpp"

using namespace ah;

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

TEST_CASE("stability index domain") {
    CHECK_THROWS_AS(StabilityIndex(1.0), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(2.1), std::invalid_argument);
    CHECK(StabilityIndex(2.0).is_gaussian());
    CHECK_FALSE(StabilityIndex(1.26).is_gaussian());
}

TEST_CASE("jump density at alpha=1.5: exact closed form") {
    // -1/(cos(3pi/4) Gamma(-3/2)) = 3/(2 sqrt(2 pi)), frozen from the exact
    // values cos(3pi/4) = -1/sqrt(2), Gamma(-3/2) = 4 sqrt(pi)/3
    const double expected = 3.0 / (2.0 * std::sqrt(2.0 * kPi));
    CHECK(levy_density(StabilityIndex(1.5), 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("jump density vanishes pointwise as alpha -> 2") {
    double prev = levy_density(StabilityIndex(1.9), 1.3);
    for (double a : {1.99, 1.999, 1.9999}) {
        const double d = levy_density(StabilityIndex(a), 1.3);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(levy_density(StabilityIndex(2.0), 1.0), std::domain_error);
    CHECK_THROWS_AS(levy_density(StabilityIndex(1.5), 0.0), std::domain_error);
}

TEST_CASE("jump density power-law scaling") {
    const StabilityIndex a(1.26);
    const double ratio = levy_density(a, 2.0) / levy_density(a, 1.0);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -2.26)).epsilon(1e-13));
}

TEST_CASE("tail mass: scaling, quadrature oracle, Gamma identity") {
    const StabilityIndex a(1.26);
    CHECK(levy_tail_mass(a, 0.5) / levy_tail_mass(a, 0.25) ==
          doctest::Approx(std::pow(2.0, -1.26)).epsilon(1e-13));

    const double by_quadrature =
        integrate_upper([&](double z) { return levy_density(a, z); }, 0.25, 1e-12, 1e-10)
            .value;
    CHECK(levy_tail_mass(a, 0.25) == doctest::Approx(by_quadrature).epsilon(1e-8));

    // (1-alpha)/Gamma(2-alpha) = -1/(alpha Gamma(-alpha)) for the cluster-count prefactor
    for (double al : {1.1, 1.26, 1.5, 1.9}) {
        const double lhs = (1.0 - al) / std::tgamma(2.0 - al);
        const double rhs = -1.0 / (al * gamma_neg(al));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("theta compensator: closed form vs quadrature, limits") {
    CHECK(theta_compensator(StabilityIndex(2.0), 1.0) == 0.0);

    const StabilityIndex a(1.26);
    const double by_quadrature =
        integrate_upper([&](double z) { return z * levy_density(a, z); }, 0.25, 1e-12,
                        1e-10)
            .value;
    CHECK(theta_compensator(a, 0.25) == doctest::Approx(by_quadrature).epsilon(1e-8));

    for (double al : {1.1, 1.3, 1.5, 1.7, 1.9})
        for (double yb : {0.1, 1.0, 10.0}) {
            const StabilityIndex s(al);
            const double q =
                integrate_upper([&](double z) { return z * levy_density(s, z); }, yb,
                                1e-13, 1e-11)
                    .value;
            CHECK(theta_compensator(s, yb) == doctest::Approx(q).epsilon(1e-8));
        }

    // divergence rate near alpha = 1: (alpha-1) Theta(alpha, 1) -> 2/pi
    const double lim = (1.01 - 1.0) * theta_compensator(StabilityIndex(1.01), 1.0);
    CHECK(lim == doctest::Approx(2.0 / kPi).epsilon(0.05));
    CHECK(theta_compensator(StabilityIndex(1.001), 1.0) >
          theta_compensator(StabilityIndex(1.01), 1.0));
}

TEST_CASE("truncated second moment vs quadrature") {
    const StabilityIndex a(1.26);
    for (double eps : {1e-4, 1e-2, 0.5}) {
        const double q =
            integrate([&](double z) { return z * z * levy_density(a, z); }, 0.0, eps,
                      1e-14, 1e-11)
                .value;
        CHECK(levy_truncated_second_moment(a, eps) == doctest::Approx(q).epsilon(1e-7));
    }
}

TEST_CASE("levy measure integrability: (z ^ z^2) nu is finite") {
    for (double al : {1.1, 1.5, 1.9}) {
        const StabilityIndex a(al);
        const double small =
            integrate([&](double z) { return z * z * levy_density(a, z); }, 0.0, 1.0,
                      1e-12, 1e-9)
                .value;
        const double large =
            integrate_upper([&](double z) { return z * levy_density(a, z); }, 1.0, 1e-12,
                            1e-9)
                .value;
        CHECK(std::isfinite(small));
        CHECK(std::isfinite(large));
        CHECK(small > 0.0);
        CHECK(large > 0.0);
    }
}

TEST_CASE("branching mechanism: zero, alpha=2 closed form, integral oracle") {
    const BranchingParams p2{5.0, 0.08, 1.0, StabilityIndex(2.0)};
    CHECK(psi_alpha(0.0, p2) == 0.0);
    const double q = 0.7;
    CHECK(psi_alpha(q, p2) ==
          doctest::Approx(5.0 * q + (0.08 * 0.08 / 2.0 + 1.0) * q * q).epsilon(1e-14));

    // integral form a q + s^2 q^2/2 + int (e^{-q z} - 1 + q z) nu(dz)
    const BranchingParams p{5.0, 0.08, 1.0, StabilityIndex(1.26)};
    const double qq = 1.0;
    const auto integrand = [&](double z) {
        return (qq * z + std::expm1(-qq * z)) * levy_density(p.alpha, z);
    };
    const double jump_part = integrate(integrand, 0.0, 1.0, 1e-12, 1e-9).value +
                             integrate_upper(integrand, 1.0, 1e-12, 1e-9).value;
    const double expect = 5.0 * qq + 0.5 * 0.08 * 0.08 * qq * qq + jump_part;
    CHECK(psi_alpha(qq, p) == doctest::Approx(expect).epsilon(1e-6));

    CHECK_THROWS_AS(psi_alpha(-0.1, p), std::domain_error);
}

TEST_CASE("branching mechanism is convex on a grid") {
    const BranchingParams p{5.0, 0.08, 1.0, StabilityIndex(1.26)};
    const double h = 1e-3;
    for (double q = h; q < 20.0; q += 0.37) {
        const double second =
            (psi_alpha(q + h, p) - 2.0 * psi_alpha(q, p) + psi_alpha(q - h, p)) / (h * h);
        CHECK(second >= -1e-9);
    }
}

TEST_CASE("stable increments at alpha=2 are sqrt(2) Gaussian") {
    RandomStream rng(101);
    const StabilityIndex a(2.0);
    const double dt = 0.25;
    RunningStat s;
    std::vector<double> sample(100000);
    for (auto& x : sample) {
        x = sample_stable_increment(a, dt, rng);
        s.add(x);
    }
    CHECK(std::fabs(s.mean()) < 3.0 * s.std_error());
    CHECK(s.variance() == doctest::Approx(2.0 * dt).epsilon(0.02));
    const double sd = std::sqrt(2.0 * dt);
    const double a2 = anderson_darling(sample, [sd](double x) { return norm_cdf(x / sd); });
    CHECK(a2 < 3.857);  // normality at the 1% level
}

TEST_CASE("stable increments reproduce the Laplace transform") {
    RandomStream rng(202);
    const StabilityIndex a(1.26);
    const std::size_t n = 1000000;
    std::vector<double> z(n);
    for (auto& x : z) x = sample_stable_increment(a, 1.0, rng);
    const double cos_term = std::cos(0.5 * kPi * 1.26);
    for (double q : {0.5, 1.0, 2.0}) {
        RunningStat s;
        for (double x : z) s.add(std::exp(-q * x));
        const double target = std::exp(-std::pow(q, 1.26) / cos_term);
        INFO("q=", q, " mc=", s.mean(), " target=", target);
        CHECK(std::fabs(s.mean() - target) < 3.0 * s.std_error());
    }
}

TEST_CASE("stable increments are self-similar in dt") {
    RandomStream rng(303);
    const StabilityIndex a(1.26);
    const double dt = 0.37;
    std::vector<double> scaled(100000), unit(100000);
    for (auto& x : scaled)
        x = sample_stable_increment(a, dt, rng) * std::pow(dt, -1.0 / 1.26);
    for (auto& x : unit) x = sample_stable_increment(a, 1.0, rng);
    CHECK(ks_two_sample(scaled, unit).p_value > 0.01);
}

TEST_CASE("effective parameters") {
    // Theta = 0 at alpha = 2: identity
    const auto id = effective_params(5.0, 0.14, 1.0, StabilityIndex(2.0), 0.25);
    CHECK(id.a_tilde == 5.0);
    CHECK(id.b_tilde == doctest::Approx(0.14).epsilon(1e-15));

    // a~ b~ = a b for a sweep of inputs
    RandomStream rng(404);
    for (int i = 0; i < 50; ++i) {
        const double a = 0.5 + 10.0 * rng.uniform();
        const double b = 0.01 + rng.uniform();
        const double sn = 0.1 + 2.0 * rng.uniform();
        const double al = 1.05 + 0.9 * rng.uniform();
        const double yb = 0.05 + 3.0 * rng.uniform();
        const auto eff = effective_params(a, b, sn, StabilityIndex(al), yb);
        CHECK(eff.a_tilde * eff.b_tilde == doctest::Approx(a * b).epsilon(1e-12));
    }

    // threshold finite: faster reversion toward a lower level
    const auto eff = effective_params(5.0, 0.14, 1.0, StabilityIndex(1.26), 0.25);
    CHECK(eff.a_tilde > 5.0);
    CHECK(eff.b_tilde < 0.14);
}

TEST_CASE("feller check") {
    CHECK(feller_check(5.0, 0.14, 0.08, 1.0, StabilityIndex(1.26)));
    CHECK_FALSE(feller_check(5.0, 0.14, 0.08, 1.0, StabilityIndex(2.0)));
    CHECK(feller_check(3.0, 0.2, 0.0, 5.0, StabilityIndex(1.5)));  // sigma = 0
}

TEST_CASE("jump threshold scaling invariant") {
    const auto jt = JumpThreshold::absolute(0.25, 2.0);
    CHECK(jt.y == 0.25);
    CHECK(jt.y_bar == doctest::Approx(0.125).epsilon(1e-16));
    CHECK_THROWS_AS(JumpThreshold::absolute(-1.0, 1.0), std::invalid_argument);
}
