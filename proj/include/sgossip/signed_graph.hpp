#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sgossip/tolerances.hpp"

namespace sgossip {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ArcKind { Attractive, Repulsive };

/// Ordered arc (source j, target i) with selection weight p_ij.
/// When the arc fires, node i (the target) updates using node j's value.
/// Node indices are 0-based.
struct Arc {
    int source = 0;
    int target = 0;
    double weight = 0.0;
};

/// Unordered node pair, 0-based.
using NodePair = std::pair<int, int>;

struct ConnectivityReport {
    bool att_has_rooted_spanning_tree = false;
    bool att_strongly_connected = false;
    bool rep_weakly_connected = false;
    bool rep_nonempty = false;
    bool bidirectional = false;  // P_att and P_rep both symmetric
};

/// Underlying graph partitioned into attractive and repulsive arcs together
/// with the selection matrix P = P_att + P_rep and the derived Laplacians.
/// Immutable after construction.
class SignedGraph {
public:
    struct RowEntry {
        int source;
        ArcKind kind;
        double cumulative;  // inverse-CDF table over row i in ascending source order
    };

    int n() const { return n_; }
    const std::vector<Arc>& att_arcs() const { return att_; }
    const std::vector<Arc>& rep_arcs() const { return rep_; }

    const Matrix& P() const { return p_; }
    const Matrix& P_att() const { return p_att_; }
    const Matrix& P_rep() const { return p_rep_; }
    const Matrix& D_att() const { return d_att_; }
    const Matrix& D_rep() const { return d_rep_; }
    const Matrix& L_att() const { return l_att_; }
    const Matrix& L_rep() const { return l_rep_; }

    /// E_0 = number of attractive arcs.
    std::size_t attractive_arc_count() const { return att_.size(); }
    /// p_* = smallest positive p_ij.
    double p_min() const { return p_min_; }
    /// p^* = largest p_ij.
    double p_max() const { return p_max_; }

    bool has_repulsive() const { return !rep_.empty(); }
    bool is_symmetric_partition(double tol = default_tolerances().symmetric_structure) const;

    const std::vector<RowEntry>& selection_row(int target) const { return rows_[target]; }

    friend SignedGraph build_partition(int n, std::vector<Arc> att, std::vector<Arc> rep,
                                       const Tolerances& tol);

private:
    SignedGraph() = default;

    int n_ = 0;
    std::vector<Arc> att_;
    std::vector<Arc> rep_;
    Matrix p_, p_att_, p_rep_, d_att_, d_rep_, l_att_, l_rep_;
    double p_min_ = 0.0;
    double p_max_ = 0.0;
    std::vector<std::vector<RowEntry>> rows_;
};

/// Validates the partition and populates every derived matrix.
/// Throws InvalidGraphError, SelfLoopError, OverlapError or StochasticityError.
SignedGraph build_partition(int n, std::vector<Arc> att, std::vector<Arc> rep,
                            const Tolerances& tol = default_tolerances());

ConnectivityReport connectivity(const SignedGraph& g);

/// K_n with p_ij = 1/(n-1); each listed pair becomes two repulsive arcs.
SignedGraph complete_uniform(int n, const std::vector<NodePair>& rep_pairs);

/// Ring R_n with P = A_{R_n}/2; listed pairs must be ring edges.
SignedGraph ring_uniform(int n, const std::vector<NodePair>& rep_pairs);

/// Complete uniform K_n whose repulsive pairs are an Erdos-Renyi G(n, p) sample.
SignedGraph er_repulsive(int n, double p, std::uint64_t seed);

/// Unweighted combinatorial Laplacian of an undirected edge list on n nodes.
Matrix laplacian_of_edges(int n, const std::vector<NodePair>& edges);

}  // namespace sgossip
