#include "ah/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "ah/asymptotics.hpp"
#include "ah/clusters.hpp"
#include "ah/io.hpp"
#include "ah/measure.hpp"
#include "ah/model.hpp"
#include "ah/parallel.hpp"
#include "ah/pricing.hpp"
#include "ah/riccati.hpp"
#include "ah/sde.hpp"
#include "ah/stats.hpp"

namespace ah {

using nlohmann::json;

namespace {

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::Smile: return "smile";
        case ExperimentKind::Tails: return "tails";
        case ExperimentKind::Clusters: return "clusters";
        case ExperimentKind::Riccati: return "riccati";
        case ExperimentKind::Measure: return "measure";
        case ExperimentKind::PoissonLimit: return "poisson-limit";
        case ExperimentKind::Validate: return "validate";
    }
    return "unknown";
}

ExperimentKind kind_from_name(const std::string& s) {
    for (ExperimentKind k :
         {ExperimentKind::Simulate, ExperimentKind::Smile, ExperimentKind::Tails,
          ExperimentKind::Clusters, ExperimentKind::Riccati, ExperimentKind::Measure,
          ExperimentKind::PoissonLimit, ExperimentKind::Validate})
        if (s == kind_name(k)) return k;
    throw std::invalid_argument("unknown experiment: " + s);
}

template <class T>
void maybe(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

ModelParams build_model(const RawModel& m) {
    ModelParams p{m.r, m.a, m.b, m.sigma, m.sigma_n, StabilityIndex(m.alpha),
                  m.rho, m.s0, m.v0};
    p.validate();
    return p;
}

SimGrid build_grid(const RawGrid& g, const RawModel& m, double t_end_override = -1.0) {
    SimGrid grid;
    grid.t_end = t_end_override > 0.0 ? t_end_override : g.t_end;
    grid.n_steps = t_end_override > 0.0
                       ? static_cast<long>(std::ceil(
                             static_cast<double>(g.n_steps) / g.t_end * t_end_override))
                       : g.n_steps;
    grid.small_jump_cutoff = g.small_jump_cutoff > 0.0
                                 ? g.small_jump_cutoff
                                 : 1e-4 * (m.sigma_n > 0.0 ? m.sigma_n : 1.0);
    grid.validate();
    return grid;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct OutputSink {
    std::string dir;
    std::vector<OutputRecord> records;

    void emit(const std::string& name, const std::string& content) {
        const std::string path = (std::filesystem::path(dir) / name).string();
        write_file_atomic(path, content);
        records.push_back({path, fnv1a64_hex(content)});
    }
};

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

// ---- experiment runners -------------------------------------------------

void run_simulate(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const SimGrid g = build_grid(cfg.grid, cfg.model);
    RandomStream rng = RandomStream(cfg.seed).substream(0);
    const JointPath jp = simulate_joint_path(p, g, rng);

    CsvBuilder path_csv({"t", "V", "logS", "intV"});
    for (std::size_t i = 0; i < jp.vpath.times.size(); ++i) {
        path_csv.add_field(jp.vpath.times[i]);
        path_csv.add_field(jp.vpath.values[i]);
        path_csv.add_field(jp.log_s[i]);
        path_csv.add_field(jp.int_v[i]);
        path_csv.end_row();
    }
    sink.emit("path.csv", path_csv.str());

    CsvBuilder jumps_csv({"t", "size"});
    for (const auto& je : jp.vpath.jumps) {
        jumps_csv.add_field(je.time);
        jumps_csv.add_field(je.size);
        jumps_csv.end_row();
    }
    sink.emit("jumps.csv", jumps_csv.str());
}

void run_smile(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const SmileOptions& o = cfg.smile;
    const Underlying u =
        o.underlying == "variance" ? Underlying::Variance : Underlying::Asset;
    const SimGrid g = build_grid(cfg.grid, cfg.model, o.maturity);
    const int threads = resolve_threads(cfg.threads);
    const RandomStream master(cfg.seed);

    const auto terminals =
        simulate_underlying_terminals(p, g, u, o.n_paths, master, threads);

    double k_lo = o.k_min, k_hi = o.k_max;
    if (!(k_hi > k_lo)) {
        // default grid: +-4 standard deviations of the terminal log underlying
        RunningStat acc;
        for (double x : terminals)
            if (x > 0.0) acc.add(std::log(x));
        const double sd = std::sqrt(acc.variance());
        k_lo = acc.mean() - 4.0 * sd;
        k_hi = acc.mean() + 4.0 * sd;
    }
    std::vector<double> ks(static_cast<std::size_t>(o.n_strikes));
    for (int i = 0; i < o.n_strikes; ++i)
        ks[static_cast<std::size_t>(i)] =
            k_lo + (k_hi - k_lo) * static_cast<double>(i) /
                       static_cast<double>(std::max(o.n_strikes - 1, 1));

    const SmileCurve curve = smile_from_terminals(
        terminals, u == Underlying::Asset ? p.s0 * std::exp(p.r * o.maturity) : -1.0,
        o.maturity, ks);

    CsvBuilder csv({"k", "price", "price_se", "implied_vol", "iv_se"});
    for (const auto& pt : curve.points) {
        csv.add_field(pt.k);
        csv.add_field(pt.price);
        csv.add_field(pt.price_se);
        csv.add_field(pt.implied_vol);
        csv.add_field(pt.iv_se);
        csv.end_row();
    }
    sink.emit("smile.csv", csv.str());

    json summary;
    summary["underlying"] = o.underlying;
    summary["maturity"] = o.maturity;
    summary["forward"] = curve.forward;
    summary["n_points"] = curve.points.size();
    summary["n_excluded"] = curve.excluded_ks.size();
    const int wing_n = std::min<int>(o.wing_points,
                                     static_cast<int>(curve.points.size()) / 2);
    for (const auto side : {WingSide::Left, WingSide::Right}) {
        const char* name = side == WingSide::Left ? "left_wing" : "right_wing";
        if (wing_n >= 4) {
            const WingFit fit = wing_regression(curve, u, side, wing_n);
            summary[name] = {{"slope", fit.slope},
                             {"slope_se", fit.slope_se},
                             {"n_points", fit.n_points}};
        } else {
            summary[name] = nullptr;
        }
    }
    sink.emit("smile_summary.json", summary.dump(2) + "\n");
}

void run_tails(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const TailsOptions& o = cfg.tails;
    const SimGrid g = build_grid(cfg.grid, cfg.model);
    const int threads = resolve_threads(cfg.threads);
    const RandomStream master(cfg.seed);
    const double t = g.t_end;

    std::vector<double> v_term(o.n_paths), neg_log_s(o.n_paths);
    parallel_blocks(o.n_paths, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            RandomStream rng = master.substream(i);
            const JointTerminal jt = simulate_joint_terminal(p, g, rng);
            v_term[i] = jt.v;
            neg_log_s[i] = -(jt.log_s - std::log(p.s0));
        }
    });

    const auto tail_table = [&](const std::vector<double>& sample,
                                const std::vector<double>& us, bool v_tail) {
        CsvBuilder csv({"u", "asymptotic", "mc_estimate", "mc_se"});
        for (double u : us) {
            std::size_t hits = 0;
            for (double x : sample)
                if (x > u) ++hits;
            const double n = static_cast<double>(sample.size());
            const double prob = static_cast<double>(hits) / n;
            const double se = std::sqrt(std::max(prob * (1.0 - prob), 0.0) / n);
            csv.add_field(u);
            csv.add_field(v_tail ? tail_v(u, t, p.v0, p) : tail_log_s(u, t, p.v0, p));
            csv.add_field(prob);
            csv.add_field(se);
            csv.end_row();
        }
        return csv.str();
    };
    sink.emit("tails_v.csv", tail_table(v_term, o.u_grid_v, true));
    sink.emit("tails_logs.csv", tail_table(neg_log_s, o.u_grid_s, false));
}

void run_clusters(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const ClustersOptions& o = cfg.clusters;
    const SimGrid g = build_grid(cfg.grid, cfg.model, o.t);
    const RandomStream master(cfg.seed);

    ClusterConfig cc{JumpThreshold::absolute(o.y, p.sigma_n), g, 50.0};
    cc.validate();

    CsvBuilder counts_csv({"replicate", "count"});
    CsvBuilder dur_csv({"replicate", "cluster", "mother_time", "mother_size",
                        "duration", "capped"});
    for (long r = 0; r < o.n_reps; ++r) {
        const Decomposition d = build_decomposition(p, cc, master.substream(
                                                              static_cast<std::uint64_t>(r)));
        counts_csv.add_field(r);
        counts_csv.add_field(static_cast<long>(d.clusters.size()));
        counts_csv.end_row();
        for (std::size_t cidx = 0; cidx < d.clusters.size(); ++cidx) {
            const auto& rec = d.clusters[cidx];
            dur_csv.add_field(r);
            dur_csv.add_field(static_cast<long>(cidx));
            dur_csv.add_field(rec.mother.time);
            dur_csv.add_field(rec.mother.size);
            dur_csv.add_field(rec.duration);
            dur_csv.add_field(static_cast<long>(rec.capped));
            dur_csv.end_row();
        }
    }
    sink.emit("counts.csv", counts_csv.str());
    sink.emit("durations.csv", dur_csv.str());

    // expected count / duration over the (alpha, y) grid
    CsvBuilder table_csv({"alpha", "y", "expected_count", "expected_duration"});
    for (double al : o.alphas) {
        ModelParams pa = p;
        pa.alpha = StabilityIndex(al);
        for (double y : o.y_grid) {
            ClusterConfig cy{JumpThreshold::absolute(y, p.sigma_n), g, 50.0};
            table_csv.add_field(al);
            table_csv.add_field(y);
            table_csv.add_field(expected_cluster_count(o.t, pa, cy));
            table_csv.add_field(expected_cluster_duration(pa, cy));
            table_csv.end_row();
        }
    }
    sink.emit("cluster_tables.csv", table_csv.str());
}

void run_riccati(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const RiccatiOptions& o = cfg.riccati;
    const FreqTriple xi{{o.xi1_re, o.xi1_im}, {o.xi2_re, o.xi2_im}, {o.xi3_re, o.xi3_im}};
    const RiccatiSolution sol = solve_riccati(xi, o.maturity, p, o.tol);
    const cplx tf = joint_transform(sol, xi, std::log(p.s0), p.v0);

    json out;
    out["xi1"] = complex_json(xi.xi1);
    out["xi2"] = complex_json(xi.xi2);
    out["xi3"] = complex_json(xi.xi3);
    out["maturity"] = o.maturity;
    out["psi"] = complex_json(sol.psi);
    out["phi"] = complex_json(sol.phi);
    out["transform"] = complex_json(tf);
    out["n_steps_used"] = sol.n_steps_used;
    out["est_error"] = sol.est_error;
    sink.emit("riccati.json", out.dump(2) + "\n");
}

void run_measure(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const MeasureOptions& o = cfg.measure;
    const EsscherParams e{o.eta, o.eta_bar, o.theta};

    json out;
    out["eta"] = o.eta;
    out["eta_bar"] = o.eta_bar;
    out["theta"] = o.theta;
    try {
        const PhysicalModel pm = to_physical(p, e);
        const RiskPremiums unit = risk_premiums(1.0, p, e);
        out["valid"] = true;
        out["a_p"] = pm.params.a;
        out["b_p"] = pm.params.b;
        out["sigma_p"] = pm.params.sigma;
        out["sigma_n_p"] = pm.params.sigma_n;
        out["tempering"] = pm.tempering;
        out["drift"] = {{"const", pm.drift_const}, {"slope", pm.drift_slope}};
        out["premium_slopes"] = {{"lambda_s", unit.lambda_s}, {"lambda_v", unit.lambda_v}};
    } catch (const std::invalid_argument& err) {
        out["valid"] = false;
        out["reason"] = err.what();
    }
    sink.emit("measure.json", out.dump(2) + "\n");
}

void run_poisson_limit(const ExperimentConfig& cfg, OutputSink& sink) {
    const ModelParams p = build_model(cfg.model);
    const PoissonLimitOptions& o = cfg.poisson_limit;
    const PoissonLimitReport rep = poisson_limit_experiment(
        o.n, o.c, o.t, p, o.n_reps, RandomStream(cfg.seed), o.steps_per_unit, -1.0,
        resolve_threads(cfg.threads));

    json out;
    out["n"] = o.n;
    out["c"] = o.c;
    out["t"] = o.t;
    out["n_reps"] = o.n_reps;
    out["lambda"] = rep.lambda;
    out["lambda_t"] = rep.lambda_t;
    out["mean_count"] = rep.mean_count;
    out["pmf_empirical"] = rep.pmf_empirical;
    out["pmf_target"] = rep.pmf_target;
    out["chi2_stat"] = rep.chi2_stat;
    out["chi2_p"] = rep.chi2_p;
    out["chi2_dof"] = rep.chi2_dof;
    sink.emit("poisson_limit.json", out.dump(2) + "\n");
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("model")) {
        const json& m = j.at("model");
        maybe(m, "r", cfg.model.r);
        maybe(m, "a", cfg.model.a);
        maybe(m, "b", cfg.model.b);
        maybe(m, "sigma", cfg.model.sigma);
        maybe(m, "sigma_n", cfg.model.sigma_n);
        maybe(m, "alpha", cfg.model.alpha);
        maybe(m, "rho", cfg.model.rho);
        maybe(m, "s0", cfg.model.s0);
        maybe(m, "v0", cfg.model.v0);
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        maybe(g, "t_end", cfg.grid.t_end);
        maybe(g, "n_steps", cfg.grid.n_steps);
        maybe(g, "small_jump_cutoff", cfg.grid.small_jump_cutoff);
    }
    maybe(j, "seed", cfg.seed);
    maybe(j, "threads", cfg.threads);
    maybe(j, "out_dir", cfg.out_dir);
    if (j.contains("experiment"))
        cfg.experiment = kind_from_name(j.at("experiment").get<std::string>());
    if (j.contains("smile")) {
        const json& s = j.at("smile");
        maybe(s, "underlying", cfg.smile.underlying);
        maybe(s, "maturity", cfg.smile.maturity);
        maybe(s, "k_min", cfg.smile.k_min);
        maybe(s, "k_max", cfg.smile.k_max);
        maybe(s, "n_strikes", cfg.smile.n_strikes);
        maybe(s, "n_paths", cfg.smile.n_paths);
        maybe(s, "steps_per_unit", cfg.smile.steps_per_unit);
        maybe(s, "wing_points", cfg.smile.wing_points);
    }
    if (j.contains("tails")) {
        const json& t = j.at("tails");
        maybe(t, "u_grid_v", cfg.tails.u_grid_v);
        maybe(t, "u_grid_s", cfg.tails.u_grid_s);
        maybe(t, "n_paths", cfg.tails.n_paths);
        maybe(t, "steps_per_unit", cfg.tails.steps_per_unit);
    }
    if (j.contains("clusters")) {
        const json& c = j.at("clusters");
        maybe(c, "y", cfg.clusters.y);
        maybe(c, "t", cfg.clusters.t);
        maybe(c, "n_reps", cfg.clusters.n_reps);
        maybe(c, "alphas", cfg.clusters.alphas);
        maybe(c, "y_grid", cfg.clusters.y_grid);
    }
    if (j.contains("riccati")) {
        const json& r = j.at("riccati");
        maybe(r, "xi1_re", cfg.riccati.xi1_re);
        maybe(r, "xi1_im", cfg.riccati.xi1_im);
        maybe(r, "xi2_re", cfg.riccati.xi2_re);
        maybe(r, "xi2_im", cfg.riccati.xi2_im);
        maybe(r, "xi3_re", cfg.riccati.xi3_re);
        maybe(r, "xi3_im", cfg.riccati.xi3_im);
        maybe(r, "maturity", cfg.riccati.maturity);
        maybe(r, "tol", cfg.riccati.tol);
    }
    if (j.contains("measure")) {
        const json& m = j.at("measure");
        maybe(m, "eta", cfg.measure.eta);
        maybe(m, "eta_bar", cfg.measure.eta_bar);
        maybe(m, "theta", cfg.measure.theta);
    }
    if (j.contains("poisson_limit")) {
        const json& pl = j.at("poisson_limit");
        maybe(pl, "n", cfg.poisson_limit.n);
        maybe(pl, "c", cfg.poisson_limit.c);
        maybe(pl, "t", cfg.poisson_limit.t);
        maybe(pl, "n_reps", cfg.poisson_limit.n_reps);
        maybe(pl, "steps_per_unit", cfg.poisson_limit.steps_per_unit);
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["model"] = {{"r", cfg.model.r},         {"a", cfg.model.a},
                  {"b", cfg.model.b},         {"sigma", cfg.model.sigma},
                  {"sigma_n", cfg.model.sigma_n}, {"alpha", cfg.model.alpha},
                  {"rho", cfg.model.rho},     {"s0", cfg.model.s0},
                  {"v0", cfg.model.v0}};
    j["grid"] = {{"t_end", cfg.grid.t_end},
                 {"n_steps", cfg.grid.n_steps},
                 {"small_jump_cutoff", cfg.grid.small_jump_cutoff}};
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["out_dir"] = cfg.out_dir;
    j["experiment"] = kind_name(cfg.experiment);
    switch (cfg.experiment) {
        case ExperimentKind::Smile:
            j["smile"] = {{"underlying", cfg.smile.underlying},
                          {"maturity", cfg.smile.maturity},
                          {"k_min", cfg.smile.k_min},
                          {"k_max", cfg.smile.k_max},
                          {"n_strikes", cfg.smile.n_strikes},
                          {"n_paths", cfg.smile.n_paths},
                          {"steps_per_unit", cfg.smile.steps_per_unit},
                          {"wing_points", cfg.smile.wing_points}};
            break;
        case ExperimentKind::Tails:
            j["tails"] = {{"u_grid_v", cfg.tails.u_grid_v},
                          {"u_grid_s", cfg.tails.u_grid_s},
                          {"n_paths", cfg.tails.n_paths},
                          {"steps_per_unit", cfg.tails.steps_per_unit}};
            break;
        case ExperimentKind::Clusters:
            j["clusters"] = {{"y", cfg.clusters.y},
                             {"t", cfg.clusters.t},
                             {"n_reps", cfg.clusters.n_reps},
                             {"alphas", cfg.clusters.alphas},
                             {"y_grid", cfg.clusters.y_grid}};
            break;
        case ExperimentKind::Riccati:
            j["riccati"] = {{"xi1_re", cfg.riccati.xi1_re}, {"xi1_im", cfg.riccati.xi1_im},
                            {"xi2_re", cfg.riccati.xi2_re}, {"xi2_im", cfg.riccati.xi2_im},
                            {"xi3_re", cfg.riccati.xi3_re}, {"xi3_im", cfg.riccati.xi3_im},
                            {"maturity", cfg.riccati.maturity},
                            {"tol", cfg.riccati.tol}};
            break;
        case ExperimentKind::Measure:
            j["measure"] = {{"eta", cfg.measure.eta},
                            {"eta_bar", cfg.measure.eta_bar},
                            {"theta", cfg.measure.theta}};
            break;
        case ExperimentKind::PoissonLimit:
            j["poisson_limit"] = {{"n", cfg.poisson_limit.n},
                                  {"c", cfg.poisson_limit.c},
                                  {"t", cfg.poisson_limit.t},
                                  {"n_reps", cfg.poisson_limit.n_reps},
                                  {"steps_per_unit", cfg.poisson_limit.steps_per_unit}};
            break;
        default:
            break;
    }
    return j.dump();
}

std::vector<Violation> validate_config(const ExperimentConfig& cfg) {
    std::vector<Violation> out;
    const RawModel& m = cfg.model;
    if (!(m.alpha > 1.0 && m.alpha <= 2.0))
        out.push_back({"alpha must lie in (1,2]", true});
    if (m.a < 0.0) out.push_back({"a must be nonnegative", true});
    if (m.b < 0.0) out.push_back({"b must be nonnegative", true});
    if (m.sigma < 0.0) out.push_back({"sigma must be nonnegative", true});
    if (m.sigma_n < 0.0) out.push_back({"sigma_n must be nonnegative", true});
    if (!(m.rho > -1.0 && m.rho < 1.0))
        out.push_back({"rho must lie strictly in (-1,1)", true});
    if (!(m.s0 > 0.0)) out.push_back({"s0 must be positive", true});
    if (m.v0 < 0.0) out.push_back({"v0 must be nonnegative", true});
    if (!(cfg.grid.t_end > 0.0)) out.push_back({"grid.t_end must be positive", true});
    if (cfg.grid.n_steps <= 0) out.push_back({"grid.n_steps must be positive", true});
    if (cfg.grid.t_end > 0.0 && cfg.grid.n_steps > 0 &&
        m.a * cfg.grid.t_end / static_cast<double>(cfg.grid.n_steps) >= 1.0)
        out.push_back({"a*dt must be below 1; refine the grid", true});

    if (m.alpha > 1.0 && m.alpha <= 2.0 && m.a >= 0.0 && m.b >= 0.0 && m.sigma >= 0.0 &&
        m.sigma_n >= 0.0 &&
        !feller_check(m.a, m.b, m.sigma, m.sigma_n, StabilityIndex(m.alpha)))
        out.push_back({"Feller condition violated: V may reach 0 (model stays runnable)",
                       false});

    switch (cfg.experiment) {
        case ExperimentKind::Smile:
            if (cfg.smile.n_paths < 1000)
                out.push_back({"smile.n_paths must be at least 1000", true});
            if (!(cfg.smile.maturity > 0.0))
                out.push_back({"smile.maturity must be positive", true});
            if (cfg.smile.underlying != "asset" && cfg.smile.underlying != "variance")
                out.push_back({"smile.underlying must be 'asset' or 'variance'", true});
            break;
        case ExperimentKind::Clusters:
            if (!(cfg.clusters.y > 0.0))
                out.push_back({"clusters.y must be positive", true});
            if (cfg.clusters.n_reps <= 0)
                out.push_back({"clusters.n_reps must be positive", true});
            break;
        case ExperimentKind::PoissonLimit:
            if (cfg.poisson_limit.n < 10)
                out.push_back({"poisson_limit.n must be at least 10", true});
            if (cfg.poisson_limit.n_reps < 1000)
                out.push_back({"poisson_limit.n_reps must be at least 1000", true});
            break;
        default:
            break;
    }
    return out;
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.version = kVersionString;
    manifest.experiment = kind_name(cfg.experiment);
    manifest.config_echo = config_to_json(cfg);

    const auto violations = validate_config(cfg);
    manifest.violations = violations;
    for (const auto& v : violations)
        if (v.fatal) throw std::invalid_argument("config validation: " + v.message);

    if (cfg.experiment != ExperimentKind::Validate) {
        std::filesystem::create_directories(cfg.out_dir);
        OutputSink sink{cfg.out_dir, {}};
        switch (cfg.experiment) {
            case ExperimentKind::Simulate: run_simulate(cfg, sink); break;
            case ExperimentKind::Smile: run_smile(cfg, sink); break;
            case ExperimentKind::Tails: run_tails(cfg, sink); break;
            case ExperimentKind::Clusters: run_clusters(cfg, sink); break;
            case ExperimentKind::Riccati: run_riccati(cfg, sink); break;
            case ExperimentKind::Measure: run_measure(cfg, sink); break;
            case ExperimentKind::PoissonLimit: run_poisson_limit(cfg, sink); break;
            case ExperimentKind::Validate: break;
        }
        manifest.outputs = std::move(sink.records);
    }

    manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return manifest;
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["version"] = m.version;
    j["experiment"] = m.experiment;
    j["config"] = json::parse(m.config_echo);
    j["wall_time_s"] = m.wall_time_s;
    j["outputs"] = json::array();
    for (const auto& rec : m.outputs)
        j["outputs"].push_back({{"path", rec.path}, {"fnv64", rec.checksum}});
    j["violations"] = json::array();
    for (const auto& v : m.violations)
        j["violations"].push_back({{"message", v.message}, {"fatal", v.fatal}});
    return j.dump(2) + "\n";
}

}  // namespace ah
