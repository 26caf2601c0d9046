#pragma once

#include <vector>

#include "ah/model.hpp"
#include "ah/rng.hpp"
#include "ah/sde.hpp"

namespace ah {

// Threshold-and-grid configuration for the cluster decomposition.
struct ClusterConfig {
    JumpThreshold threshold;
    SimGrid grid;
    double duration_cap_factor = 50.0;  // CB paths are cut at cap_factor / a time units

    void validate() const {
        grid.validate();
        if (!(threshold.y > grid.small_jump_cutoff))
            throw std::invalid_argument(
                "ClusterConfig: threshold y must exceed the small-jump cutoff");
    }
};

struct MotherJump {
    double time;  // T_n
    double size;  // jump of V, strictly above y
};

struct ClusterRecord {
    MotherJump mother;
    VPath path;       // CB process on offsets from mother.time (path.times[0] = 0)
    double duration;  // absorption offset at grid resolution; equals the cap if capped
    bool capped = false;
};

struct Decomposition {
    VPath fundamental;
    std::vector<ClusterRecord> clusters;
    VPath composed;  // fundamental + active clusters, pointwise on the grid
};

// Truncated fundamental process: drift (a~, b~), jumps capped at y.
VPath simulate_fundamental(const ModelParams& p, const ClusterConfig& c, RandomStream& rng);

// Inhomogeneous Poisson arrivals with intensity levy_tail_mass(alpha, y_bar)
// times the piecewise-constant (left endpoint) fundamental value, obtained by
// thinning a homogeneous process at the path maximum; sizes are independent
// Pareto(alpha, y).
std::vector<MotherJump> sample_mother_jumps(const VPath& fundamental, const ClusterConfig& c,
                                            StabilityIndex alpha, double sigma_n,
                                            RandomStream& rng);

// Pareto(alpha, y) variate by CDF inversion.
double sample_jump_size(StabilityIndex alpha, double y, RandomStream& rng);

// Full decomposition of one path: fundamental, mother jumps and one CB
// cluster per mother jump, each consuming a disjoint derived stream so the
// independence structure holds by construction. composed is the exact
// pointwise sum on the grid.
Decomposition build_decomposition(const ModelParams& p, const ClusterConfig& c,
                                  const RandomStream& rng);

// E[number of mother jumps on [0,t]]:
//   (1-alpha) sigma_n^alpha / (cos(pi alpha/2) Gamma(2-alpha) y^alpha)
//     * (b~ t + (V0 - b~)(1 - e^{-a~ t})/a~).
double expected_cluster_count(double t, const ModelParams& p, const ClusterConfig& c);

// E[cluster duration] = alpha y^alpha
//     int_0^inf dz/Psi(z) int_y^inf (1 - e^{-zeta z}) zeta^{-1-alpha} dzeta,
// independent of the triggering jump size. Inner integral in closed
// incomplete-gamma form when y z >= 1, by quadrature otherwise.
double expected_cluster_duration(const ModelParams& p, const ClusterConfig& c);

// Exponential tail bound (alpha y / (alpha-1)) q1 e^{-a(t-1)}, valid for t > 1.
// The constant q1 is supplied by the caller.
double duration_tail_bound(double t, const ModelParams& p, const ClusterConfig& c,
                           double q1);

struct PoissonLimitReport {
    double lambda = 0.0;    // limit intensity
    double lambda_t = 0.0;  // target Poisson mean
    double mean_count = 0.0;
    std::vector<long> counts;           // per replicate
    std::vector<double> pmf_empirical;  // histogram over {0,1,...}
    std::vector<double> pmf_target;
    double chi2_stat = 0.0;
    double chi2_p = 1.0;
    int chi2_dof = 0;
};

// Mother-jump counts J^{(y_n)}_{n t} with y_n = c n^{1/alpha} against the
// limiting Poisson law with lambda = -sigma_n^alpha b/(alpha cos(pi alpha/2)
// Gamma(-alpha) c^alpha).
PoissonLimitReport poisson_limit_experiment(long n, double c_scale, double t,
                                            const ModelParams& p, long n_reps,
                                            const RandomStream& master,
                                            long steps_per_unit = 200,
                                            double small_jump_cutoff = -1.0,
                                            int n_threads = 1);

}  // namespace ah
