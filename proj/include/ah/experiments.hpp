#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ah {

inline constexpr const char* kVersionString = "alpha-heston 1.0.0";

// Raw (unvalidated) mirror of ModelParams so `validate` can report every
// violation instead of throwing at the first bad field. Defaults are the
// parameter set used throughout: a=5, b=0.14, sigma=0.08, sigma_n=1,
// alpha=1.26, V0=0.03.
struct RawModel {
    double r = 0.0;
    double a = 5.0;
    double b = 0.14;
    double sigma = 0.08;
    double sigma_n = 1.0;
    double alpha = 1.26;
    double rho = -0.7;
    double s0 = 1.0;
    double v0 = 0.03;
};

struct RawGrid {
    double t_end = 1.0;
    long n_steps = 1000;
    double small_jump_cutoff = -1.0;  // <= 0: auto (1e-4 * sigma_n)
};

enum class ExperimentKind {
    Simulate,
    Smile,
    Tails,
    Clusters,
    Riccati,
    Measure,
    PoissonLimit,
    Validate,
};

struct SmileOptions {
    std::string underlying = "asset";  // "asset" | "variance"
    double maturity = 1.0;
    double k_min = 0.0, k_max = 0.0;  // equal: auto grid (+-4 sd of log underlying)
    int n_strikes = 25;
    std::uint64_t n_paths = 100000;
    long steps_per_unit = 500;
    int wing_points = 6;
};

struct TailsOptions {
    std::vector<double> u_grid_v = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
    std::vector<double> u_grid_s = {1.0, 1.5, 2.0, 2.5, 3.0};
    std::uint64_t n_paths = 200000;
    long steps_per_unit = 500;
};

struct ClustersOptions {
    double y = 0.25;
    double t = 14.0;
    long n_reps = 200;
    std::vector<double> alphas = {1.2, 1.5, 1.8};
    std::vector<double> y_grid = {0.1, 0.2, 0.3, 0.5, 1.0};
};

struct RiccatiOptions {
    double xi1_re = 0.0, xi1_im = 1.0;
    double xi2_re = 0.0, xi2_im = 0.0;
    double xi3_re = 0.0, xi3_im = 0.0;
    double maturity = 1.0;
    double tol = 1e-10;
};

struct MeasureOptions {
    double eta = -0.5;
    double eta_bar = 0.2;
    double theta = 0.1;
};

struct PoissonLimitOptions {
    long n = 100;
    double c = 1.0;
    double t = 1.0;
    long n_reps = 1000;
    long steps_per_unit = 200;
};

struct ExperimentConfig {
    RawModel model;
    RawGrid grid;
    std::uint64_t seed = 42;
    int threads = 0;  // 0: hardware concurrency
    std::string out_dir = ".";
    ExperimentKind experiment = ExperimentKind::Simulate;

    SmileOptions smile;
    TailsOptions tails;
    ClustersOptions clusters;
    RiccatiOptions riccati;
    MeasureOptions measure;
    PoissonLimitOptions poisson_limit;
};

struct Violation {
    std::string message;
    bool fatal = true;  // Feller is reported as a non-fatal warning
};

// Parse a JSON config (any subset of fields; missing ones keep defaults).
ExperimentConfig parse_config_json(const std::string& json_text);

// Canonical JSON echo of a config; identical configs serialize identically.
std::string config_to_json(const ExperimentConfig& cfg);

// Every violated precondition across model, grid and the selected
// experiment's options. A violated Feller condition is a warning: the model
// stays runnable.
std::vector<Violation> validate_config(const ExperimentConfig& cfg);

struct OutputRecord {
    std::string path;
    std::string checksum;  // fnv1a64 of the bytes written
};

struct RunManifest {
    std::string version;
    std::string experiment;
    std::string config_echo;  // canonical config JSON
    double wall_time_s = 0.0;
    std::vector<OutputRecord> outputs;
    std::vector<Violation> violations;  // populated by `validate`
};

// Validates, dispatches to the named experiment and writes outputs
// atomically under cfg.out_dir. Throws std::invalid_argument on fatal
// validation errors.
RunManifest run_experiment(const ExperimentConfig& cfg);

// Manifest as JSON (printed to stdout by the CLI).
std::string manifest_to_json(const RunManifest& m);

}  // namespace ah
