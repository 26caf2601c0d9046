// Command-line runner for the alpha-Heston engine. Every subcommand reads an
// optional JSON config, applies flag overrides (flags win), executes the
// experiment and prints a manifest (config echo, output checksums) to stdout.
//
// Exit codes: 0 success, 2 validation failure, 3 runtime numerical failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ah/errors.hpp"
#include "ah/experiments.hpp"
#include "ah/io.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    // sentinel-marked overrides, applied only when the flag was passed
    std::int64_t seed = -1;
    int threads = -1;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--seed", flags.seed, "master seed (overrides config)");
    cmd->add_option("--threads", flags.threads, "worker threads, 0 = hardware");
    cmd->add_option("--out", flags.out_dir, "output directory");
}

ah::ExperimentConfig load_config(const CommonFlags& flags, ah::ExperimentKind kind) {
    ah::ExperimentConfig cfg;
    if (!flags.config_path.empty())
        cfg = ah::parse_config_json(ah::read_file(flags.config_path));
    cfg.experiment = kind;
    if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.threads >= 0) cfg.threads = flags.threads;
    if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
    return cfg;
}

int execute(const ah::ExperimentConfig& cfg) {
    const ah::RunManifest manifest = ah::run_experiment(cfg);
    std::cout << ah::manifest_to_json(manifest);
    if (cfg.experiment == ah::ExperimentKind::Validate)
        for (const auto& v : manifest.violations)
            if (v.fatal) return 2;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-Heston simulation and analytics engine"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
        ah::ExperimentKind kind;
    };
    const SubSpec subs[] = {
        {"simulate", "simulate one joint path and write it as CSV",
         ah::ExperimentKind::Simulate},
        {"smile", "Monte Carlo implied-volatility smile", ah::ExperimentKind::Smile},
        {"tails", "tail probabilities of V and -log S vs their asymptotics",
         ah::ExperimentKind::Tails},
        {"clusters", "cluster decomposition statistics", ah::ExperimentKind::Clusters},
        {"riccati", "generalized Riccati transform at one frequency",
         ah::ExperimentKind::Riccati},
        {"measure", "risk-neutral to physical parameter map", ah::ExperimentKind::Measure},
        {"poisson-limit", "large-threshold Poisson limit of mother jumps",
         ah::ExperimentKind::PoissonLimit},
        {"validate", "check the config and report violations", ah::ExperimentKind::Validate},
    };

    CommonFlags flags[std::size(subs)];
    // per-subcommand convenience overrides
    double smile_maturity = -1.0;
    std::int64_t smile_paths = -1;
    std::string smile_underlying;
    double clusters_y = -1.0, clusters_t = -1.0;
    std::int64_t clusters_reps = -1;
    std::int64_t tails_paths = -1;

    CLI::App* cmds[std::size(subs)];
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        cmds[i] = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(cmds[i], flags[i]);
    }
    cmds[1]->add_option("--maturity", smile_maturity, "option maturity");
    cmds[1]->add_option("--paths", smile_paths, "Monte Carlo paths");
    cmds[1]->add_option("--underlying", smile_underlying, "asset|variance");
    cmds[2]->add_option("--paths", tails_paths, "Monte Carlo paths");
    cmds[3]->add_option("--y", clusters_y, "jump threshold");
    cmds[3]->add_option("--t", clusters_t, "horizon");
    cmds[3]->add_option("--reps", clusters_reps, "decomposition replicates");

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(subs); ++i) {
        if (!cmds[i]->parsed()) continue;
        try {
            ah::ExperimentConfig cfg = load_config(flags[i], subs[i].kind);
            if (i == 1) {
                if (smile_maturity > 0.0) cfg.smile.maturity = smile_maturity;
                if (smile_paths > 0) cfg.smile.n_paths = static_cast<std::uint64_t>(smile_paths);
                if (!smile_underlying.empty()) cfg.smile.underlying = smile_underlying;
            }
            if (i == 2 && tails_paths > 0)
                cfg.tails.n_paths = static_cast<std::uint64_t>(tails_paths);
            if (i == 3) {
                if (clusters_y > 0.0) cfg.clusters.y = clusters_y;
                if (clusters_t > 0.0) cfg.clusters.t = clusters_t;
                if (clusters_reps > 0) cfg.clusters.n_reps = clusters_reps;
            }
            return execute(cfg);
        } catch (const std::invalid_argument& e) {
            std::cerr << "validation error: " << e.what() << "\n";
            return 2;
        } catch (const std::domain_error& e) {
            std::cerr << "validation error: " << e.what() << "\n";
            return 2;
        } catch (const ah::blow_up_error& e) {
            std::cerr << "numerical failure: " << e.what() << "\n";
            return 3;
        } catch (const std::exception& e) {
            std::cerr << "runtime failure: " << e.what() << "\n";
            return 3;
        }
    }
    return 0;
}
