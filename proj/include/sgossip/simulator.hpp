#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sgossip/rng.hpp"
#include "sgossip/schedule.hpp"
#include "sgossip/signed_graph.hpp"
#include "sgossip/tolerances.hpp"

namespace sgossip {

using StateVector = Vector;

struct SelectedArc {
    int source = 0;  // j
    int target = 0;  // i, the node that updates
    ArcKind kind = ArcKind::Attractive;
};

/// Draws node i uniformly, then its neighbour j with probability p_ij.
/// Consumes exactly two uniforms from `rng`.
SelectedArc select_arc(const SignedGraph& g, CounterRng& rng);

/// Applies one attraction or repulsion update to the arc's target.
/// Throws OverflowError if the new value is non-finite or exceeds `overflow`.
StateVector step(const StateVector& x, const SelectedArc& arc, double alpha, double beta,
                 double overflow = default_tolerances().overflow);

/// Records every step up to `dense_until`, then geometrically thinned steps.
struct SnapshotPolicy {
    std::size_t dense_until = 1000;
    double growth = 1.05;

    std::size_t next_after(std::size_t k) const;
};

struct RunOptions {
    SnapshotPolicy snapshots{};
    bool record_states = true;
    bool record_arcs = false;
    bool stop_at_consensus = false;
    Tolerances tol{};
};

enum class RunStatus { Completed, Diverged };

struct Trajectory {
    std::vector<std::size_t> steps;    // recorded k
    std::vector<StateVector> states;   // x(k) for recorded k (if record_states)
    std::vector<double> min;           // m(k)
    std::vector<double> max;           // M(k)
    std::vector<double> spread;        // M(k) - m(k)
    std::optional<std::size_t> hitting_time;         // exact: all values bit-equal
    std::optional<std::size_t> approx_hitting_time;  // spread <= rel * spread(0)
    std::vector<SelectedArc> arc_log;
    RunStatus status = RunStatus::Completed;
    std::size_t final_step = 0;
    StateVector final_state;
};

/// One gossip run of `horizon` meeting slots using the stream (seed, 0).
Trajectory run(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
               std::size_t horizon, std::uint64_t seed, const RunOptions& options = {});

/// Applies a fixed arc sequence; returns x after each step (x0 first).
std::vector<StateVector> replay(const Schedule& schedule, const StateVector& x0,
                                const std::vector<SelectedArc>& arcs);

struct Ensemble {
    std::size_t horizon = 0;
    std::size_t trials = 0;
    Matrix mean_y;          // (horizon+1) x n, mean of y(k)
    Matrix se_y;            // standard error of mean_y
    Vector mean_y_sq;       // mean |y(k)|^2
    Vector se_y_sq;
    Vector mean_spread;
    Vector se_spread;
    Vector mean_log_spread; // mean log max(spread, 1e-300)
    std::vector<std::optional<std::size_t>> hitting_times;  // exact, per trial
    Matrix pair_max_mean;   // mean over trials of max_k |x_i(k) - x_j(k)|
    Matrix pair_max_max;
    std::size_t diverged_trials = 0;
};

/// Trial t uses CounterRng(seed, t). Diverged trials are kept, frozen at the
/// state where the overflow guard fired. Reduction order is fixed by trial index.
Ensemble monte_carlo(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
                     std::size_t horizon, std::size_t trials, std::uint64_t seed,
                     unsigned threads = 0, const Tolerances& tol = default_tolerances());

enum class EmpiricalClass { Converging, Diverging, Undecided };
const char* to_string(EmpiricalClass c);

struct TrendSummary {
    EmpiricalClass classification = EmpiricalClass::Undecided;
    double log_spread_slope = 0.0;  // least squares over the last quarter
};

/// Trend of the mean log spread over the last quarter of the horizon.
TrendSummary classify_trend(const Ensemble& e, double slope_tol = 1e-6);

struct ConditionParameters {
    int n = 0;
    double p_min = 0.0;
    double p_max = 0.0;
    std::size_t e0 = 0;
};

struct PhiReport {
    std::vector<double> values;        // Phi_{k(n-1)}, k = 0..count-1
    std::vector<bool> in_unit_interval;
    std::vector<double> partial_sums;
    bool all_in_unit_interval = false;
    bool beta_bounded = false;
    bool condition_met = false;        // finite-horizon reading, not a proof
};

struct QReport {
    int z = 1;
    std::vector<double> values;        // Q(m), m = 0..count-1
    std::vector<double> running_sums;
    std::vector<double> running_average;  // running_sums[t] / (t+1)
};

struct ConditionReport {
    ConditionParameters parameters;
    std::optional<PhiReport> phi;
    std::optional<QReport> q;
};

ConditionParameters condition_parameters(const SignedGraph& g);

/// Phi_s = 1 - (1 - prod(alpha)/2) c - (1 - c) prod(1 + beta), c = (p_*/n)^(n-1),
/// products over s..s+n-1, evaluated at s = k(n-1).
PhiReport phi_sequence(const SignedGraph& g, const Schedule& schedule, std::size_t count,
                       const Tolerances& tol = default_tolerances());

/// Q(m) over windows [mZ, (m+1)Z). Throws GainRangeError if some alpha_k >= 1.
QReport q_sequence(const SignedGraph& g, const Schedule& schedule, int z, std::size_t count);

/// Fraction of trials in which max_k |x_i(k) - x_j(k)| > threshold, per ordered pair.
Matrix no_survivor_probe(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
                         std::size_t horizon, std::size_t trials, double threshold,
                         std::uint64_t seed, const Tolerances& tol = default_tolerances());

}  // namespace sgossip
