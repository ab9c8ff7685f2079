#include "sgossip/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "sgossip/errors.hpp"
#include "sgossip/expectation.hpp"
#include "sgossip/io.hpp"
#include "sgossip/meansquare.hpp"
#include "sgossip/simulator.hpp"

namespace sgossip::cli {

namespace {

using io::json;

struct RunConfig {
    std::string graph;
    std::string alpha = "0.5";
    std::string beta = "0";
    std::size_t horizon = 1000;
    std::size_t trials = 1;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::string x0 = "ramp";
    double tol = 1e-9;
    int n = 0;
    std::string p_grid;
    int samples = 30;
    std::size_t count = 100;
    int z = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
}

double parse_double(const std::string& s) {
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail() || !in.eof()) throw std::invalid_argument("not a number: " + s);
    return v;
}

// "1-2,3-4" (1-based) -> 0-based pairs
std::vector<NodePair> parse_pairs(const std::string& text) {
    std::vector<NodePair> pairs;
    if (text.empty()) return pairs;
    for (const auto& item : split(text, ',')) {
        const auto ends = split(item, '-');
        if (ends.size() != 2) throw std::invalid_argument("pair must look like a-b: " + item);
        pairs.emplace_back(parse_int(ends[0]) - 1, parse_int(ends[1]) - 1);
    }
    return pairs;
}

/// Graph source: a JSON file, or complete:N[:a-b,...], ring:N[:a-b,...], er:N:P.
SignedGraph resolve_graph(const RunConfig& cfg) {
    if (cfg.graph.empty()) throw std::invalid_argument("--graph is required");
    const auto parts = split(cfg.graph, ':');
    const std::string kind = parts.front();
    if ((kind == "complete" || kind == "ring") && (parts.size() == 2 || parts.size() == 3)) {
        const int n = parse_int(parts[1]);
        const auto pairs = parts.size() == 3 ? parse_pairs(parts[2]) : std::vector<NodePair>{};
        return kind == "complete" ? complete_uniform(n, pairs) : ring_uniform(n, pairs);
    }
    if (kind == "er" && parts.size() == 3) {
        if (!cfg.seed) throw std::invalid_argument("er: graphs need --seed");
        return er_repulsive(parse_int(parts[1]), parse_double(parts[2]), *cfg.seed);
    }
    return io::load_graph(cfg.graph);
}

StateVector resolve_x0(const RunConfig& cfg, int n) {
    StateVector x(n);
    if (cfg.x0 == "ramp") {
        for (int i = 0; i < n; ++i) x[i] = i;
        return x;
    }
    const auto parts = split(cfg.x0, ',');
    if (static_cast<int>(parts.size()) != n) {
        throw std::invalid_argument("--x0 needs " + std::to_string(n) + " values");
    }
    for (int i = 0; i < n; ++i) x[i] = parse_double(parts[i]);
    return x;
}

double constant_gain(const std::string& spec, const char* name) {
    const auto seq = GainSequence::parse(spec);
    if (!seq.is_constant()) {
        throw std::invalid_argument(std::string("--") + name + " must be a constant here");
    }
    return seq(0);
}

void check_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    if (cfg.format.empty()) return;
    for (const char* f : allowed) {
        if (cfg.format == f) return;
    }
    throw std::invalid_argument("unsupported --format " + cfg.format);
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out.empty()) {
        out << content;
    } else {
        io::write_files_atomically({{cfg.out, content}});
    }
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    check_format(cfg, {"json"});
    const SignedGraph g = resolve_graph(cfg);
    const double alpha = constant_gain(cfg.alpha, "alpha");
    const double beta = constant_gain(cfg.beta, "beta");
    const auto expectation = classify_expectation(g, alpha, beta);
    const auto ms = ms_classify(g, Schedule::constant(alpha, beta));
    json doc = io::to_json(expectation);
    doc["mean_square"] = io::to_json(ms);
    emit(cfg, doc.dump(2) + "\n", out);
    switch (expectation.classification) {
        case ExpectationClass::Converges: return kConverges;
        case ExpectationClass::Diverges: return kDiverges;
        case ExpectationClass::Critical: return kUndecided;
    }
    return kUndecided;
}

int cmd_threshold(const RunConfig& cfg, std::ostream& out) {
    check_format(cfg, {"json"});
    const SignedGraph g = resolve_graph(cfg);
    const double alpha = constant_gain(cfg.alpha, "alpha");
    const double bisection = threshold_beta(g, alpha, cfg.tol);
    json doc = {{"alpha", alpha}, {"beta_star_bisection", bisection}};
    if (is_complete_uniform(g)) {
        const double closed = complete_graph_threshold(g, alpha);
        doc["beta_star_closed_form"] = closed;
        doc["agreement"] = std::abs(closed - bisection) <= 1e-6;
    } else {
        doc["beta_star_closed_form"] = nullptr;
        doc["agreement"] = nullptr;
    }
    emit(cfg, doc.dump(2) + "\n", out);
    return kConverges;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    check_format(cfg, {"csv"});
    if (!cfg.seed) throw std::invalid_argument("simulate needs --seed");
    if (cfg.out.empty()) throw std::invalid_argument("simulate needs --out PREFIX");
    const SignedGraph g = resolve_graph(cfg);
    const Schedule schedule{GainSequence::parse(cfg.alpha), GainSequence::parse(cfg.beta)};
    const StateVector x0 = resolve_x0(cfg, g.n());

    const Ensemble e = monte_carlo(g, schedule, x0, cfg.horizon, cfg.trials, *cfg.seed);
    const TrendSummary trend = classify_trend(e);

    std::size_t hits = 0;
    double hit_sum = 0.0;
    for (const auto& t : e.hitting_times) {
        if (t) {
            ++hits;
            hit_sum += static_cast<double>(*t);
        }
    }
    json summary = {{"n", g.n()},
                    {"alpha", schedule.alpha.describe()},
                    {"beta", schedule.beta.describe()},
                    {"horizon", cfg.horizon},
                    {"trials", cfg.trials},
                    {"seed", *cfg.seed},
                    {"consensus_fraction", static_cast<double>(hits) / cfg.trials},
                    {"mean_hitting_time", hits ? json(hit_sum / hits) : json(nullptr)},
                    {"diverged_trials", e.diverged_trials},
                    {"classification", to_string(trend.classification)},
                    {"log_spread_slope", trend.log_spread_slope}};

    const std::string prefix = cfg.out;
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    if (cfg.trials == 1) {
        RunOptions options;
        const Trajectory t = run(g, schedule, x0, cfg.horizon, *cfg.seed, options);
        summary["status"] = t.status == RunStatus::Diverged ? "Diverged" : "Completed";
        summary["hitting_time"] = t.hitting_time ? json(*t.hitting_time) : json(nullptr);
        summary["approx_hitting_time"] =
            t.approx_hitting_time ? json(*t.approx_hitting_time) : json(nullptr);
        files.emplace_back(prefix + "_trajectory.csv", io::trajectory_csv(t));
        files.emplace_back(prefix + "_series.csv", io::series_csv(t));
    } else {
        files.emplace_back(prefix + "_mean_y.csv", io::ensemble_y_csv(e));
        files.emplace_back(prefix + "_series.csv", io::ensemble_series_csv(e));
    }
    files.emplace_back(prefix + "_summary.json", summary.dump(2) + "\n");
    io::write_files_atomically(files);
    out << summary.dump(2) << "\n";
    return kConverges;
}

int cmd_er_sweep(const RunConfig& cfg, std::ostream& out) {
    check_format(cfg, {"csv", "json"});
    if (!cfg.seed) throw std::invalid_argument("er-sweep needs --seed");
    if (cfg.n < 3) throw std::invalid_argument("er-sweep needs --n >= 3");
    std::vector<double> grid;
    for (const auto& item : split(cfg.p_grid, ',')) {
        const double p = parse_double(item);
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("grid value outside [0,1]: " + item);
        grid.push_back(p);
    }
    if (grid.empty()) throw std::invalid_argument("--p-grid is empty");
    const double alpha = constant_gain(cfg.alpha, "alpha");
    const double beta = constant_gain(cfg.beta, "beta");
    const auto points = er_sweep(cfg.n, grid, alpha, beta, cfg.samples, *cfg.seed);
    if (cfg.format == "json") {
        json doc = {{"n", cfg.n}, {"alpha", alpha}, {"beta", beta}, {"points", json::array()}};
        if (alpha > 0.0 && beta > 0.0) doc["p_star"] = er_threshold(alpha, beta);
        for (const auto& p : points) {
            doc["points"].push_back({{"p", p.p},
                                     {"fraction_converging", p.fraction_converging},
                                     {"samples", p.samples},
                                     {"seed", p.seed},
                                     {"xi", p.xi}});
        }
        emit(cfg, doc.dump(2) + "\n", out);
    } else {
        emit(cfg, io::sweep_csv(points, cfg.n, alpha, beta), out);
    }
    return kConverges;
}

int cmd_conditions(const RunConfig& cfg, std::ostream& out) {
    check_format(cfg, {"json"});
    const SignedGraph g = resolve_graph(cfg);
    const Schedule schedule{GainSequence::parse(cfg.alpha), GainSequence::parse(cfg.beta)};
    ConditionReport report;
    report.parameters = condition_parameters(g);
    report.phi = phi_sequence(g, schedule, cfg.count);
    if (cfg.z > 0) report.q = q_sequence(g, schedule, cfg.z, cfg.count);
    emit(cfg, io::to_json(report).dump(2) + "\n", out);
    return kConverges;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gossip consensus over attractive/repulsive graphs: spectral criteria, "
                 "thresholds and Monte Carlo simulation"};
    app.set_config("--config", "", "TOML/INI configuration file; flags override it");
    app.require_subcommand(1);

    RunConfig cfg;
    std::uint64_t seed = 0;

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", cfg.graph,
                        "graph JSON file, or complete:N[:a-b,..], ring:N[:a-b,..], er:N:P")
            ->required();
    };
    auto add_gains = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "attraction gain (constant or schedule spec)")
            ->capture_default_str();
        sub->add_option("--beta", cfg.beta, "repulsion gain (constant or schedule spec)")
            ->capture_default_str();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output path (prefix for simulate)");
        sub->add_option("--format", cfg.format, "json or csv");
    };
    auto add_seed = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--seed", seed, "random seed");
        if (required) opt->required();
        return opt;
    };

    auto* analyze = app.add_subcommand("analyze", "expectation and mean-square criteria");
    add_graph(analyze);
    add_gains(analyze);
    add_output(analyze);
    auto* analyze_seed = add_seed(analyze, false);

    auto* threshold = app.add_subcommand("threshold", "phase-transition threshold in beta");
    add_graph(threshold);
    threshold->add_option("--alpha", cfg.alpha, "attraction gain")->capture_default_str();
    threshold->add_option("--tol", cfg.tol, "bisection width")->capture_default_str();
    add_output(threshold);
    auto* threshold_seed = add_seed(threshold, false);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo gossip runs");
    add_graph(simulate);
    add_gains(simulate);
    add_output(simulate);
    simulate->add_option("--horizon", cfg.horizon, "meeting slots per run")->capture_default_str();
    simulate->add_option("--trials", cfg.trials, "independent runs")->capture_default_str();
    simulate->add_option("--x0", cfg.x0, "initial values a,b,c,... or 'ramp'")->capture_default_str();
    auto* simulate_seed = add_seed(simulate, true);

    auto* sweep = app.add_subcommand("er-sweep", "Erdos-Renyi repulsive graph sweep");
    sweep->add_option("--n", cfg.n, "node count")->required();
    sweep->add_option("--p-grid", cfg.p_grid, "comma-separated edge probabilities")->required();
    add_gains(sweep);
    sweep->add_option("--samples", cfg.samples, "graphs per probability")->capture_default_str();
    add_output(sweep);
    auto* sweep_seed = add_seed(sweep, true);

    auto* conditions = app.add_subcommand("conditions", "almost-sure Phi and Q condition sequences");
    add_graph(conditions);
    add_gains(conditions);
    add_output(conditions);
    conditions->add_option("--count", cfg.count, "number of windows")->capture_default_str();
    conditions->add_option("--z", cfg.z, "window length Z for Q(m); omit to skip Q");
    auto* conditions_seed = add_seed(conditions, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kError;
    }

    for (auto* opt : {analyze_seed, threshold_seed, simulate_seed, sweep_seed, conditions_seed}) {
        if (opt->count() > 0) cfg.seed = seed;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (threshold->parsed()) return cmd_threshold(cfg, out);
        if (simulate->parsed()) return cmd_simulate(cfg, out);
        if (sweep->parsed()) return cmd_er_sweep(cfg, out);
        if (conditions->parsed()) return cmd_conditions(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace sgossip::cli
