#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgossip/errors.hpp"
#include "sgossip/expectation.hpp"
#include "sgossip/io.hpp"
#include "sgossip/meansquare.hpp"
#include "sgossip/schedule.hpp"
#include "sgossip/signed_graph.hpp"
#include "sgossip/simulator.hpp"
#include "sgossip/spectral.hpp"

namespace py = pybind11;
using namespace sgossip;

namespace {

using ArcTuple = std::tuple<int, int, double>;

std::vector<Arc> to_arcs(const std::vector<ArcTuple>& arcs) {
    std::vector<Arc> out;
    out.reserve(arcs.size());
    for (const auto& [s, t, w] : arcs) out.push_back({s, t, w});
    return out;
}

std::vector<ArcTuple> from_arcs(const std::vector<Arc>& arcs) {
    std::vector<ArcTuple> out;
    out.reserve(arcs.size());
    for (const Arc& a : arcs) out.emplace_back(a.source, a.target, a.weight);
    return out;
}

// accepts a float, a gain spec string or a GainSequence
GainSequence to_gain(const py::object& v) {
    if (py::isinstance<GainSequence>(v)) return v.cast<GainSequence>();
    if (py::isinstance<py::str>(v)) return GainSequence::parse(v.cast<std::string>());
    return GainSequence::constant(v.cast<double>());
}

Schedule to_schedule(const py::object& alpha, const py::object& beta) {
    return Schedule{to_gain(alpha), to_gain(beta)};
}

py::object optional_size(const std::optional<std::size_t>& v) {
    return v ? py::cast(*v) : py::none();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Randomized gossip with attractive and repulsive links";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidGraphError>(m, "InvalidGraphError", base);
    py::register_exception<OverlapError>(m, "OverlapError", base);
    py::register_exception<StochasticityError>(m, "StochasticityError", base);
    py::register_exception<SelfLoopError>(m, "SelfLoopError", base);
    py::register_exception<InvalidPairError>(m, "InvalidPairError", base);
    py::register_exception<NotRingEdgeError>(m, "NotRingEdgeError", base);
    py::register_exception<NotSymmetricError>(m, "NotSymmetricError", base);
    py::register_exception<NoConvergenceError>(m, "NoConvergenceError", base);
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<GainRangeError>(m, "GainRangeError", base);
    py::register_exception<HypothesisError>(m, "HypothesisError", base);
    py::register_exception<EmptyRepulsiveError>(m, "EmptyRepulsiveError", base);
    py::register_exception<NotCompleteUniformError>(m, "NotCompleteUniformError", base);
    py::register_exception<OverflowError>(m, "OverflowError", base);

    py::class_<ConnectivityReport>(m, "ConnectivityReport")
        .def_readonly("att_has_rooted_spanning_tree", &ConnectivityReport::att_has_rooted_spanning_tree)
        .def_readonly("att_strongly_connected", &ConnectivityReport::att_strongly_connected)
        .def_readonly("rep_weakly_connected", &ConnectivityReport::rep_weakly_connected)
        .def_readonly("rep_nonempty", &ConnectivityReport::rep_nonempty)
        .def_readonly("bidirectional", &ConnectivityReport::bidirectional);

    py::class_<SignedGraph>(m, "SignedGraph")
        .def_property_readonly("n", &SignedGraph::n)
        .def_property_readonly("att_arcs", [](const SignedGraph& g) { return from_arcs(g.att_arcs()); })
        .def_property_readonly("rep_arcs", [](const SignedGraph& g) { return from_arcs(g.rep_arcs()); })
        .def_property_readonly("P", &SignedGraph::P)
        .def_property_readonly("P_att", &SignedGraph::P_att)
        .def_property_readonly("P_rep", &SignedGraph::P_rep)
        .def_property_readonly("L_att", &SignedGraph::L_att)
        .def_property_readonly("L_rep", &SignedGraph::L_rep)
        .def_property_readonly("E0", &SignedGraph::attractive_arc_count)
        .def_property_readonly("p_min", &SignedGraph::p_min)
        .def_property_readonly("p_max", &SignedGraph::p_max)
        .def("to_json", [](const SignedGraph& g) { return io::graph_to_json(g).dump(); })
        .def_static("from_json", [](const std::string& s) { return io::graph_from_json(io::json::parse(s)); })
        .def("__repr__", [](const SignedGraph& g) {
            return "<SignedGraph n=" + std::to_string(g.n()) + " att=" + std::to_string(g.att_arcs().size()) +
                   " rep=" + std::to_string(g.rep_arcs().size()) + ">";
        });

    m.def("build_partition",
          [](int n, const std::vector<ArcTuple>& att, const std::vector<ArcTuple>& rep) {
              return build_partition(n, to_arcs(att), to_arcs(rep));
          },
          py::arg("n"), py::arg("att"), py::arg("rep"),
          "Arcs are (source, target, weight) with 0-based nodes; target i listens to source j.");
    m.def("complete_uniform", &complete_uniform, py::arg("n"), py::arg("rep_pairs") = std::vector<NodePair>{});
    m.def("ring_uniform", &ring_uniform, py::arg("n"), py::arg("rep_pairs") = std::vector<NodePair>{});
    m.def("er_repulsive", &er_repulsive, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("connectivity", &connectivity, py::arg("g"));

    m.def("spectral_radius", [](const Matrix& M) { return spectral_radius(M); }, py::arg("M"));
    m.def("mean_update", &mean_update, py::arg("g"), py::arg("alpha"), py::arg("beta"));
    m.def("f_rho", [](const SignedGraph& g, double a, double b) { return f_rho(g, a, b); }, py::arg("g"),
          py::arg("alpha"), py::arg("beta"));
    m.def("weyl_bound", [](const SignedGraph& g, double a, double b) { return weyl_bound(g, a, b); },
          py::arg("g"), py::arg("alpha"), py::arg("beta"));
    m.def("classify_expectation",
          [](const SignedGraph& g, double a, double b) {
              const auto r = classify_expectation(g, a, b);
              py::dict d;
              d["f"] = r.f_value;
              d["classification"] = to_string(r.classification);
              d["weyl_bound"] = r.weyl_bound ? py::cast(*r.weyl_bound) : py::none();
              d["threshold_beta"] = r.threshold_beta ? py::cast(*r.threshold_beta) : py::none();
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"));
    m.def("threshold_beta", [](const SignedGraph& g, double a, double w) { return threshold_beta(g, a, w); },
          py::arg("g"), py::arg("alpha"), py::arg("width") = 1e-9);
    m.def("complete_graph_threshold",
          [](const SignedGraph& g, double a) { return complete_graph_threshold(g, a); }, py::arg("g"),
          py::arg("alpha"));
    m.def("er_threshold", &er_threshold, py::arg("alpha"), py::arg("beta"));
    m.def("er_sweep",
          [](int n, const std::vector<double>& grid, double a, double b, int samples, std::uint64_t seed) {
              py::list out;
              for (const auto& p : er_sweep(n, grid, a, b, samples, seed)) {
                  py::dict d;
                  d["p"] = p.p;
                  d["fraction_converging"] = p.fraction_converging;
                  d["samples"] = p.samples;
                  d["xi"] = p.xi;
                  out.append(d);
              }
              return out;
          },
          py::arg("n"), py::arg("p_grid"), py::arg("alpha"), py::arg("beta"), py::arg("samples"),
          py::arg("seed"));

    py::class_<GainSequence>(m, "GainSequence")
        .def_static("constant", &GainSequence::constant)
        .def_static("table", &GainSequence::table)
        .def_static("power", &GainSequence::power, py::arg("scale"), py::arg("offset"), py::arg("exponent"))
        .def_static("parse", &GainSequence::parse)
        .def("__call__", &GainSequence::operator(), py::arg("k"))
        .def("__repr__", &GainSequence::describe);

    m.def("second_moment_operator", &second_moment_operator, py::arg("g"), py::arg("alpha"), py::arg("beta"));
    m.def("ms_classify",
          [](const SignedGraph& g, const py::object& a, const py::object& b, std::size_t horizon) {
              const auto r = ms_classify(g, to_schedule(a, b), horizon);
              py::dict d;
              d["lambda_max"] = r.lambda_max;
              d["classification"] = to_string(r.classification);
              d["log_lambda_max_sums"] = r.log_lambda_max_sums;
              d["time_varying"] = r.time_varying;
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("horizon") = 0);

    m.def("run",
          [](const SignedGraph& g, const py::object& a, const py::object& b, const StateVector& x0,
             std::size_t horizon, std::uint64_t seed, bool stop_at_consensus) {
              RunOptions opts;
              opts.stop_at_consensus = stop_at_consensus;
              const auto t = run(g, to_schedule(a, b), x0, horizon, seed, opts);
              py::dict d;
              d["steps"] = t.steps;
              d["spread"] = t.spread;
              d["min"] = t.min;
              d["max"] = t.max;
              d["hitting_time"] = optional_size(t.hitting_time);
              d["status"] = t.status == RunStatus::Completed ? "completed" : "diverged";
              d["final_step"] = t.final_step;
              d["final_state"] = t.final_state;
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("x0"), py::arg("horizon"), py::arg("seed"),
          py::arg("stop_at_consensus") = false);
    m.def("monte_carlo",
          [](const SignedGraph& g, const py::object& a, const py::object& b, const StateVector& x0,
             std::size_t horizon, std::size_t trials, std::uint64_t seed, unsigned threads) {
              const auto e = monte_carlo(g, to_schedule(a, b), x0, horizon, trials, seed, threads);
              const auto trend = classify_trend(e);
              std::size_t reached = 0;
              py::list hits;
              for (const auto& h : e.hitting_times) {
                  reached += h.has_value();
                  hits.append(optional_size(h));
              }
              py::dict d;
              d["mean_y"] = e.mean_y;
              d["se_y"] = e.se_y;
              d["mean_spread"] = e.mean_spread;
              d["mean_log_spread"] = e.mean_log_spread;
              d["hitting_times"] = hits;
              d["consensus_fraction"] = static_cast<double>(reached) / static_cast<double>(e.trials);
              d["diverged_trials"] = e.diverged_trials;
              d["classification"] = to_string(trend.classification);
              d["log_spread_slope"] = trend.log_spread_slope;
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("x0"), py::arg("horizon"), py::arg("trials"),
          py::arg("seed"), py::arg("threads") = 0);
    m.def("no_survivor_probe",
          [](const SignedGraph& g, const py::object& a, const py::object& b, const StateVector& x0,
             std::size_t horizon, std::size_t trials, double threshold, std::uint64_t seed) {
              return no_survivor_probe(g, to_schedule(a, b), x0, horizon, trials, threshold, seed);
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("x0"), py::arg("horizon"), py::arg("trials"),
          py::arg("threshold"), py::arg("seed"));
    m.def("phi_sequence",
          [](const SignedGraph& g, const py::object& a, const py::object& b, std::size_t count) {
              const auto r = phi_sequence(g, to_schedule(a, b), count);
              py::dict d;
              d["values"] = r.values;
              d["partial_sums"] = r.partial_sums;
              d["all_in_unit_interval"] = r.all_in_unit_interval;
              d["condition_met"] = r.condition_met;
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("count"));
    m.def("q_sequence",
          [](const SignedGraph& g, const py::object& a, const py::object& b, int z, std::size_t count) {
              const auto r = q_sequence(g, to_schedule(a, b), z, count);
              py::dict d;
              d["values"] = r.values;
              d["running_sums"] = r.running_sums;
              d["running_average"] = r.running_average;
              return d;
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("z"), py::arg("count"));
}
