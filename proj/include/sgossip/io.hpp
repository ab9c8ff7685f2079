#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sgossip/expectation.hpp"
#include "sgossip/meansquare.hpp"
#include "sgossip/signed_graph.hpp"
#include "sgossip/simulator.hpp"

namespace sgossip::io {

using nlohmann::json;

/// Graph files: {"n": N, "att": [[j, i, w], ...], "rep": [[j, i, w], ...]}, 1-based.
json graph_to_json(const SignedGraph& g);
SignedGraph graph_from_json(const json& doc);
SignedGraph load_graph(const std::filesystem::path& path);

json to_json(const ExpectationReport& r);
json to_json(const SecondMomentReport& r);
json to_json(const ConditionReport& r);

/// Locale-independent, 17 significant digits.
std::string format_double(double v);

std::string trajectory_csv(const Trajectory& t);   // k, x_1..x_n
std::string series_csv(const Trajectory& t);       // k, m, M, spread
std::string ensemble_y_csv(const Ensemble& e);     // k, y_i_mean, y_i_se, ...
std::string ensemble_series_csv(const Ensemble& e);
std::string sweep_csv(const std::vector<SweepPoint>& points, int n, double alpha, double beta);

/// Writes each file to a sibling temporary, then renames all of them. Nothing
/// is renamed unless every temporary was written.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace sgossip::io
