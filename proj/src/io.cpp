#include "sgossip/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "sgossip/errors.hpp"

namespace sgossip::io {

namespace {

json arcs_to_json(const std::vector<Arc>& arcs) {
    json out = json::array();
    for (const Arc& a : arcs) out.push_back({a.source + 1, a.target + 1, a.weight});
    return out;
}

std::vector<Arc> arcs_from_json(const json& list, const char* key) {
    std::vector<Arc> arcs;
    if (list.is_null()) return arcs;
    if (!list.is_array()) throw InvalidGraphError(std::string("'") + key + "' must be an array");
    for (const auto& item : list) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
            !item[1].is_number_integer() || !item[2].is_number()) {
            throw InvalidGraphError(std::string("entries of '") + key + "' must be [j, i, w]");
        }
        arcs.push_back({item[0].get<int>() - 1, item[1].get<int>() - 1, item[2].get<double>()});
    }
    return arcs;
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json graph_to_json(const SignedGraph& g) {
    return {{"n", g.n()}, {"att", arcs_to_json(g.att_arcs())}, {"rep", arcs_to_json(g.rep_arcs())}};
}

SignedGraph graph_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
        throw InvalidGraphError("graph document needs an integer 'n'");
    }
    return build_partition(doc["n"].get<int>(), arcs_from_json(doc.value("att", json()), "att"),
                           arcs_from_json(doc.value("rep", json()), "rep"));
}

SignedGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InvalidGraphError("malformed graph file " + path.string() + ": " + e.what());
    }
    return graph_from_json(doc);
}

json to_json(const ExpectationReport& r) {
    return {{"n", r.n},
            {"alpha", r.alpha},
            {"beta", r.beta},
            {"f", r.f_value},
            {"classification", to_string(r.classification)},
            {"weyl_bound", optional_number(r.weyl_bound)},
            {"beta_star", optional_number(r.threshold_beta)}};
}

json to_json(const SecondMomentReport& r) {
    json out = {{"lambda_max", r.lambda_max},
                {"lambda2_full", r.lambda2_full},
                {"lambda2_restricted", r.lambda2_restricted},
                {"classification", to_string(r.classification)}};
    if (r.time_varying) {
        out["log_lambda_max_sums"] = r.log_lambda_max_sums;
        out["log_lambda2_sums"] = r.log_lambda2_sums;
    }
    return out;
}

json to_json(const ConditionReport& r) {
    json out;
    out["parameters"] = {{"n", r.parameters.n},
                         {"p_min", r.parameters.p_min},
                         {"p_max", r.parameters.p_max},
                         {"E0", r.parameters.e0}};
    if (r.phi) {
        out["phi"] = {{"values", r.phi->values},
                      {"in_unit_interval", r.phi->in_unit_interval},
                      {"partial_sums", r.phi->partial_sums},
                      {"all_in_unit_interval", r.phi->all_in_unit_interval},
                      {"beta_bounded", r.phi->beta_bounded},
                      {"condition_met", r.phi->condition_met}};
    } else {
        out["phi"] = nullptr;
    }
    if (r.q) {
        out["q"] = {{"Z", r.q->z},
                    {"values", r.q->values},
                    {"running_sums", r.q->running_sums},
                    {"running_average", r.q->running_average}};
    } else {
        out["q"] = nullptr;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& t) {
    std::string out = "k";
    const auto n = t.final_state.size();
    for (Eigen::Index i = 0; i < n; ++i) out += ",x_" + std::to_string(i + 1);
    out += '\n';
    for (std::size_t r = 0; r < t.states.size(); ++r) {
        out += std::to_string(t.steps[r]);
        for (Eigen::Index i = 0; i < n; ++i) out += ',' + format_double(t.states[r][i]);
        out += '\n';
    }
    return out;
}

std::string series_csv(const Trajectory& t) {
    std::string out = "k,m,M,spread\n";
    for (std::size_t r = 0; r < t.steps.size(); ++r) {
        out += std::to_string(t.steps[r]) + ',' + format_double(t.min[r]) + ',' +
               format_double(t.max[r]) + ',' + format_double(t.spread[r]) + '\n';
    }
    return out;
}

std::string ensemble_y_csv(const Ensemble& e) {
    std::string out = "k";
    const auto n = e.mean_y.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        out += ",y_" + std::to_string(i + 1) + "_mean,y_" + std::to_string(i + 1) + "_se";
    }
    out += '\n';
    for (Eigen::Index k = 0; k < e.mean_y.rows(); ++k) {
        out += std::to_string(k);
        for (Eigen::Index i = 0; i < n; ++i) {
            out += ',' + format_double(e.mean_y(k, i)) + ',' + format_double(e.se_y(k, i));
        }
        out += '\n';
    }
    return out;
}

std::string ensemble_series_csv(const Ensemble& e) {
    std::string out = "k,y_sq_mean,y_sq_se,spread_mean,spread_se,log_spread_mean\n";
    for (Eigen::Index k = 0; k < e.mean_y_sq.size(); ++k) {
        out += std::to_string(k) + ',' + format_double(e.mean_y_sq[k]) + ',' +
               format_double(e.se_y_sq[k]) + ',' + format_double(e.mean_spread[k]) + ',' +
               format_double(e.se_spread[k]) + ',' + format_double(e.mean_log_spread[k]) + '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points, int n, double alpha, double beta) {
    std::string out = "# n=" + std::to_string(n) + ",alpha=" + format_double(alpha) +
                      ",beta=" + format_double(beta);
    if (alpha > 0.0 && beta > 0.0) out += ",p_star=" + format_double(er_threshold(alpha, beta));
    out += "\np,fraction_converging,samples,seed\n";
    for (const auto& p : points) {
        out += format_double(p.p) + ',' + format_double(p.fraction_converging) + ',' +
               std::to_string(p.samples) + ',' + std::to_string(p.seed) + '\n';
    }
    return out;
}

void write_files_atomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
    std::vector<std::filesystem::path> temps;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto& t : temps) std::filesystem::remove(t, ec);
    };
    for (const auto& [path, content] : files) {
        auto tmp = path;
        tmp += ".tmp";
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            cleanup();
            throw Error("cannot write " + path.string());
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::filesystem::rename(temps[i], files[i].first);
    }
}

}  // namespace sgossip::io
