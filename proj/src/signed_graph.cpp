#include "sgossip/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "sgossip/errors.hpp"
#include "sgossip/rng.hpp"

namespace sgossip {

namespace {

std::string arc_name(const Arc& a) {
    return "(" + std::to_string(a.source + 1) + "," + std::to_string(a.target + 1) + ")";
}

void check_arc(int n, const Arc& a) {
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) {
        throw InvalidGraphError("arc " + arc_name(a) + " references a node outside 1.." +
                                std::to_string(n));
    }
    if (a.source == a.target) {
        throw SelfLoopError("self-loop at node " + std::to_string(a.source + 1));
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
        throw InvalidGraphError("arc " + arc_name(a) + " has non-positive weight");
    }
}

Matrix degree_of(const Matrix& P) {
    return P.rowwise().sum().asDiagonal();
}

// Node whose forward reachability set is everything, if any: the last node to
// finish in a depth-first pass over all nodes is the only candidate.
bool has_root(const std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(out.size());
    std::vector<char> seen(n, 0);
    int last_finished = 0;
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < out[v].size()) {
                const int w = out[v][next++];
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                last_finished = v;
                stack.pop_back();
            }
        }
    }
    std::vector<char> reach(n, 0);
    std::vector<int> queue{last_finished};
    reach[last_finished] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (int w : out[queue[h]]) {
            if (!reach[w]) {
                reach[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return static_cast<int>(queue.size()) == n;
}

int reach_count(const std::vector<std::vector<int>>& out, int start) {
    std::vector<char> reach(out.size(), 0);
    std::vector<int> queue{start};
    reach[start] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (int w : out[queue[h]]) {
            if (!reach[w]) {
                reach[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return static_cast<int>(queue.size());
}

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

std::vector<NodePair> normalized_pairs(int n, const std::vector<NodePair>& pairs) {
    std::set<NodePair> seen;
    std::vector<NodePair> out;
    for (auto [a, b] : pairs) {
        if (a == b) {
            throw InvalidPairError("self-pair {" + std::to_string(a + 1) + "," +
                                   std::to_string(b + 1) + "}");
        }
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw InvalidPairError("pair references a node outside 1.." + std::to_string(n));
        }
        NodePair key{std::min(a, b), std::max(a, b)};
        if (!seen.insert(key).second) {
            throw InvalidPairError("duplicate pair {" + std::to_string(key.first + 1) + "," +
                                   std::to_string(key.second + 1) + "}");
        }
        out.push_back(key);
    }
    return out;
}

}  // namespace

SignedGraph build_partition(int n, std::vector<Arc> att, std::vector<Arc> rep,
                            const Tolerances& tol) {
    if (n < 3) {
        throw InvalidGraphError("node count must be at least 3, got " + std::to_string(n));
    }
    std::set<std::pair<int, int>> att_keys;
    for (const Arc& a : att) {
        check_arc(n, a);
        if (!att_keys.insert({a.source, a.target}).second) {
            throw InvalidGraphError("duplicate attractive arc " + arc_name(a));
        }
    }
    std::set<std::pair<int, int>> rep_keys;
    for (const Arc& a : rep) {
        check_arc(n, a);
        if (att_keys.count({a.source, a.target})) {
            throw OverlapError("arc " + arc_name(a) + " is both attractive and repulsive");
        }
        if (!rep_keys.insert({a.source, a.target}).second) {
            throw InvalidGraphError("duplicate repulsive arc " + arc_name(a));
        }
    }

    SignedGraph g;
    g.n_ = n;
    g.p_att_ = Matrix::Zero(n, n);
    g.p_rep_ = Matrix::Zero(n, n);
    for (const Arc& a : att) g.p_att_(a.target, a.source) = a.weight;
    for (const Arc& a : rep) g.p_rep_(a.target, a.source) = a.weight;
    g.p_ = g.p_att_ + g.p_rep_;

    for (int i = 0; i < n; ++i) {
        const double row = g.p_.row(i).sum();
        if (std::abs(row - 1.0) > tol.stochastic) {
            throw StochasticityError("row " + std::to_string(i + 1) + " of P sums to " +
                                     std::to_string(row));
        }
    }

    g.d_att_ = degree_of(g.p_att_);
    g.d_rep_ = degree_of(g.p_rep_);
    g.l_att_ = g.d_att_ - g.p_att_;
    g.l_rep_ = g.d_rep_ - g.p_rep_;

    g.p_min_ = std::numeric_limits<double>::infinity();
    g.p_max_ = 0.0;
    for (const auto* set : {&att, &rep}) {
        for (const Arc& a : *set) {
            g.p_min_ = std::min(g.p_min_, a.weight);
            g.p_max_ = std::max(g.p_max_, a.weight);
        }
    }

    g.rows_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        double cumulative = 0.0;
        for (int j = 0; j < n; ++j) {
            if (g.p_att_(i, j) > 0.0) {
                cumulative += g.p_att_(i, j);
                g.rows_[i].push_back({j, ArcKind::Attractive, cumulative});
            } else if (g.p_rep_(i, j) > 0.0) {
                cumulative += g.p_rep_(i, j);
                g.rows_[i].push_back({j, ArcKind::Repulsive, cumulative});
            }
        }
    }

    g.att_ = std::move(att);
    g.rep_ = std::move(rep);
    return g;
}

bool SignedGraph::is_symmetric_partition(double tol) const {
    return (p_att_ - p_att_.transpose()).cwiseAbs().maxCoeff() <= tol &&
           (p_rep_ - p_rep_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

ConnectivityReport connectivity(const SignedGraph& g) {
    const int n = g.n();
    std::vector<std::vector<int>> out(n), in(n);
    for (const Arc& a : g.att_arcs()) {
        out[a.source].push_back(a.target);
        in[a.target].push_back(a.source);
    }

    ConnectivityReport r;
    r.att_strongly_connected = reach_count(out, 0) == n && reach_count(in, 0) == n;
    r.att_has_rooted_spanning_tree = r.att_strongly_connected || has_root(out);

    r.rep_nonempty = g.has_repulsive();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    int components = n;
    for (const Arc& a : g.rep_arcs()) {
        const int ra = find_root(parent, a.source);
        const int rb = find_root(parent, a.target);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    r.rep_weakly_connected = components == 1;
    r.bidirectional = g.is_symmetric_partition();
    return r;
}

SignedGraph complete_uniform(int n, const std::vector<NodePair>& rep_pairs) {
    if (n < 3) {
        throw InvalidGraphError("node count must be at least 3, got " + std::to_string(n));
    }
    const auto pairs = normalized_pairs(n, rep_pairs);
    const std::set<NodePair> repulsive(pairs.begin(), pairs.end());
    const double w = 1.0 / static_cast<double>(n - 1);
    std::vector<Arc> att, rep;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Arc arc{j, i, w};
            if (repulsive.count({std::min(i, j), std::max(i, j)})) {
                rep.push_back(arc);
            } else {
                att.push_back(arc);
            }
        }
    }
    return build_partition(n, std::move(att), std::move(rep));
}

SignedGraph ring_uniform(int n, const std::vector<NodePair>& rep_pairs) {
    if (n < 3) {
        throw InvalidGraphError("node count must be at least 3, got " + std::to_string(n));
    }
    const auto pairs = normalized_pairs(n, rep_pairs);
    for (auto [a, b] : pairs) {
        const int gap = b - a;
        if (gap != 1 && gap != n - 1) {
            throw NotRingEdgeError("{" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                   "} is not an edge of the ring R_" + std::to_string(n));
        }
    }
    const std::set<NodePair> repulsive(pairs.begin(), pairs.end());
    std::vector<Arc> att, rep;
    for (int i = 0; i < n; ++i) {
        for (int j : {(i + n - 1) % n, (i + 1) % n}) {
            const Arc arc{j, i, 0.5};
            if (repulsive.count({std::min(i, j), std::max(i, j)})) {
                rep.push_back(arc);
            } else {
                att.push_back(arc);
            }
        }
    }
    return build_partition(n, std::move(att), std::move(rep));
}

SignedGraph er_repulsive(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidGraphError("edge probability must lie in [0,1]");
    }
    if (n < 3) {
        throw InvalidGraphError("node count must be at least 3, got " + std::to_string(n));
    }
    CounterRng rng(seed);
    std::vector<NodePair> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < p) pairs.emplace_back(i, j);
        }
    }
    return complete_uniform(n, pairs);
}

Matrix laplacian_of_edges(int n, const std::vector<NodePair>& edges) {
    Matrix L = Matrix::Zero(n, n);
    for (auto [a, b] : edges) {
        if (a == b) continue;
        L(a, b) -= 1.0;
        L(b, a) -= 1.0;
        L(a, a) += 1.0;
        L(b, b) += 1.0;
    }
    return L;
}

}  // namespace sgossip
