#include "sgossip/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "sgossip/errors.hpp"
#include "sgossip/expectation.hpp"

namespace sgossip {

namespace {

constexpr double kLogFloor = 1e-300;

// Equal endpoints and alpha = 1 are exact in real arithmetic, and an attraction
// step is a convex combination, so the result is kept in [min, max] of the pair.
double updated_value(double xi, double xj, ArcKind kind, double alpha, double beta) {
    if (xi == xj) return xi;
    if (kind == ArcKind::Attractive) {
        if (alpha == 1.0) return xj;
        const double v = (1.0 - alpha) * xi + alpha * xj;
        return std::clamp(v, std::min(xi, xj), std::max(xi, xj));
    }
    return (1.0 + beta) * xi - beta * xj;
}

bool overflowed(double v, double limit) {
    return !std::isfinite(v) || std::abs(v) > limit;
}

void check_initial(const SignedGraph& g, const StateVector& x0) {
    if (x0.size() != g.n()) {
        throw DimensionError("initial state has " + std::to_string(x0.size()) +
                             " entries, graph has " + std::to_string(g.n()) + " nodes");
    }
    if (!x0.allFinite()) throw Error("initial state has non-finite entries");
}

}  // namespace

SelectedArc select_arc(const SignedGraph& g, CounterRng& rng) {
    const int n = g.n();
    const int i = std::min(n - 1, static_cast<int>(rng.uniform() * n));
    const double u = rng.uniform();
    const auto& row = g.selection_row(i);
    auto it = std::upper_bound(row.begin(), row.end(), u,
                               [](double value, const SignedGraph::RowEntry& e) {
                                   return value < e.cumulative;
                               });
    if (it == row.end()) it = std::prev(row.end());
    return {it->source, i, it->kind};
}

StateVector step(const StateVector& x, const SelectedArc& arc, double alpha, double beta,
                 double overflow) {
    check_gains(alpha, beta);
    StateVector next = x;
    const double v = updated_value(x[arc.target], x[arc.source], arc.kind, alpha, beta);
    if (overflowed(v, overflow)) {
        throw OverflowError("node " + std::to_string(arc.target + 1) + " left the representable range");
    }
    next[arc.target] = v;
    return next;
}

std::size_t SnapshotPolicy::next_after(std::size_t k) const {
    if (k < dense_until) return k + 1;
    const double grown = std::ceil(static_cast<double>(k) * growth);
    return std::max(k + 1, static_cast<std::size_t>(grown));
}

Trajectory run(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
               std::size_t horizon, std::uint64_t seed, const RunOptions& options) {
    check_initial(g, x0);
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");

    Trajectory t;
    CounterRng rng(seed, 0);
    StateVector x = x0;
    double lo = x.minCoeff();
    double hi = x.maxCoeff();
    const double spread0 = hi - lo;
    const double approx_level = options.tol.approx_consensus_rel * spread0;

    auto record = [&](std::size_t k) {
        t.steps.push_back(k);
        if (options.record_states) t.states.push_back(x);
        t.min.push_back(lo);
        t.max.push_back(hi);
        t.spread.push_back(hi - lo);
    };
    auto check_consensus = [&](std::size_t k) {
        if (!t.hitting_time && hi == lo) t.hitting_time = k;
        if (!t.approx_hitting_time && hi - lo <= approx_level) t.approx_hitting_time = k;
    };

    record(0);
    check_consensus(0);
    std::size_t next_record = options.snapshots.next_after(0);
    std::size_t k = 0;
    for (; k < horizon; ++k) {
        if (options.stop_at_consensus && t.hitting_time) break;
        const double alpha = schedule.alpha_at(k);
        const double beta = schedule.beta_at(k);
        const SelectedArc arc = select_arc(g, rng);
        if (options.record_arcs) t.arc_log.push_back(arc);
        const double v = updated_value(x[arc.target], x[arc.source], arc.kind, alpha, beta);
        if (overflowed(v, options.tol.overflow)) {
            t.status = RunStatus::Diverged;
            break;
        }
        x[arc.target] = v;
        lo = x.minCoeff();
        hi = x.maxCoeff();
        check_consensus(k + 1);
        const bool last = k + 1 == horizon || (options.stop_at_consensus && t.hitting_time);
        if (k + 1 == next_record || last) {
            record(k + 1);
            next_record = options.snapshots.next_after(k + 1);
        }
    }
    t.final_step = k;
    if (t.steps.back() != k) record(k);
    t.final_state = x;
    return t;
}

std::vector<StateVector> replay(const Schedule& schedule, const StateVector& x0,
                                const std::vector<SelectedArc>& arcs) {
    std::vector<StateVector> states{x0};
    states.reserve(arcs.size() + 1);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        states.push_back(step(states.back(), arcs[k], schedule.alpha_at(k), schedule.beta_at(k)));
    }
    return states;
}

namespace {

// Running mean / sum of squared deviations, merged with Chan's pairwise update.
struct Moments {
    Vector mean;
    Vector m2;

    explicit Moments(Eigen::Index size = 0) : mean(Vector::Zero(size)), m2(Vector::Zero(size)) {}

    void push(Eigen::Index idx, double value, double count) {
        const double delta = value - mean[idx];
        mean[idx] += delta / count;
        m2[idx] += delta * (value - mean[idx]);
    }

    void merge(const Moments& other, double count_self, double count_other) {
        const double total = count_self + count_other;
        if (count_other == 0.0) return;
        const Vector delta = other.mean - mean;
        mean += delta * (count_other / total);
        m2 += other.m2 + delta.cwiseProduct(delta) * (count_self * count_other / total);
    }

    Vector standard_error(double count) const {
        if (count < 2.0) return Vector::Zero(mean.size());
        return (m2 / (count - 1.0) / count).cwiseSqrt();
    }
};

struct Partial {
    double count = 0.0;
    Moments y;         // (horizon+1) * n, row-major by step
    Moments y_sq;
    Moments spread;
    Vector log_spread_sum;
    std::vector<std::optional<std::size_t>> hitting;
    Matrix pair_sum;
    Matrix pair_max;
    std::size_t diverged = 0;

    Partial(std::size_t horizon, int n)
        : y(static_cast<Eigen::Index>((horizon + 1) * n)),
          y_sq(static_cast<Eigen::Index>(horizon + 1)),
          spread(static_cast<Eigen::Index>(horizon + 1)),
          log_spread_sum(Vector::Zero(static_cast<Eigen::Index>(horizon + 1))),
          pair_sum(Matrix::Zero(n, n)),
          pair_max(Matrix::Zero(n, n)) {}
};

void simulate_trial(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
                    std::size_t horizon, std::uint64_t seed, std::size_t trial,
                    const Tolerances& tol, Partial& acc) {
    const int n = g.n();
    CounterRng rng(seed, trial);
    StateVector x = x0;
    Matrix pair = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) pair(i, j) = std::abs(x[i] - x[j]);
    }
    bool frozen = false;
    bool consensus = false;
    std::optional<std::size_t> hit;
    acc.count += 1.0;
    const double c = acc.count;

    auto accumulate = [&](std::size_t k) {
        const double lo = x.minCoeff();
        const double hi = x.maxCoeff();
        if (!consensus && hi == lo) {
            consensus = true;
            hit = k;
        }
        const double mean = x.mean();
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double yi = consensus ? 0.0 : x[i] - mean;
            norm_sq += yi * yi;
            acc.y.push(static_cast<Eigen::Index>(k * n + i), yi, c);
        }
        const double spread = hi - lo;
        acc.y_sq.push(static_cast<Eigen::Index>(k), norm_sq, c);
        acc.spread.push(static_cast<Eigen::Index>(k), spread, c);
        acc.log_spread_sum[static_cast<Eigen::Index>(k)] += std::log(std::max(spread, kLogFloor));
    };

    accumulate(0);
    for (std::size_t k = 0; k < horizon; ++k) {
        if (!frozen && !consensus) {
            const double alpha = schedule.alpha_at(k);
            const double beta = schedule.beta_at(k);
            const SelectedArc arc = select_arc(g, rng);
            const double v = updated_value(x[arc.target], x[arc.source], arc.kind, alpha, beta);
            if (overflowed(v, tol.overflow)) {
                frozen = true;
                ++acc.diverged;
            } else {
                x[arc.target] = v;
                const int i = arc.target;
                for (int j = 0; j < n; ++j) {
                    const double d = std::abs(x[i] - x[j]);
                    if (d > pair(i, j)) {
                        pair(i, j) = d;
                        pair(j, i) = d;
                    }
                }
            }
        }
        accumulate(k + 1);
    }
    acc.hitting.push_back(hit);
    acc.pair_sum += pair;
    acc.pair_max = acc.pair_max.cwiseMax(pair);
}

}  // namespace

Ensemble monte_carlo(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
                     std::size_t horizon, std::size_t trials, std::uint64_t seed, unsigned threads,
                     const Tolerances& tol) {
    check_initial(g, x0);
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const int n = g.n();

    // Fixed-size blocks reduced in block order keep the floating-point result
    // independent of the thread count.
    constexpr std::size_t kBlock = 64;
    const std::size_t blocks = (trials + kBlock - 1) / kBlock;
    const unsigned workers = detail::resolve_threads(threads, blocks);

    Partial total(horizon, n);
    for (std::size_t wave = 0; wave < blocks; wave += workers) {
        const std::size_t in_wave = std::min<std::size_t>(workers, blocks - wave);
        std::vector<Partial> partials(in_wave, Partial(horizon, n));
        detail::parallel_for(in_wave, workers, [&](std::size_t w) {
            const std::size_t block = wave + w;
            const std::size_t first = block * kBlock;
            const std::size_t last = std::min(trials, first + kBlock);
            for (std::size_t t = first; t < last; ++t) {
                simulate_trial(g, schedule, x0, horizon, seed, t, tol, partials[w]);
            }
        });
        for (auto& p : partials) {
            total.y.merge(p.y, total.count, p.count);
            total.y_sq.merge(p.y_sq, total.count, p.count);
            total.spread.merge(p.spread, total.count, p.count);
            total.count += p.count;
            total.log_spread_sum += p.log_spread_sum;
            total.hitting.insert(total.hitting.end(), p.hitting.begin(), p.hitting.end());
            total.pair_sum += p.pair_sum;
            total.pair_max = total.pair_max.cwiseMax(p.pair_max);
            total.diverged += p.diverged;
        }
    }

    Ensemble e;
    e.horizon = horizon;
    e.trials = trials;
    const auto rows = static_cast<Eigen::Index>(horizon + 1);
    const Vector se_y = total.y.standard_error(total.count);
    e.mean_y = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        total.y.mean.data(), rows, n);
    e.se_y = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        se_y.data(), rows, n);
    e.mean_y_sq = total.y_sq.mean;
    e.se_y_sq = total.y_sq.standard_error(total.count);
    e.mean_spread = total.spread.mean;
    e.se_spread = total.spread.standard_error(total.count);
    e.mean_log_spread = total.log_spread_sum / total.count;
    e.hitting_times = std::move(total.hitting);
    e.pair_max_mean = total.pair_sum / total.count;
    e.pair_max_max = total.pair_max;
    e.diverged_trials = total.diverged;
    return e;
}

const char* to_string(EmpiricalClass c) {
    switch (c) {
        case EmpiricalClass::Converging: return "converging";
        case EmpiricalClass::Diverging: return "diverging";
        case EmpiricalClass::Undecided: return "undecided";
    }
    return "undecided";
}

TrendSummary classify_trend(const Ensemble& e, double slope_tol) {
    TrendSummary s;
    const std::size_t h = e.horizon;
    const std::size_t first = (3 * h) / 4;
    const double count = static_cast<double>(h - first + 1);
    if (count >= 2.0) {
        double mk = 0.0;
        double mv = 0.0;
        for (std::size_t k = first; k <= h; ++k) {
            mk += static_cast<double>(k);
            mv += e.mean_log_spread[static_cast<Eigen::Index>(k)];
        }
        mk /= count;
        mv /= count;
        double sxy = 0.0;
        double sxx = 0.0;
        for (std::size_t k = first; k <= h; ++k) {
            const double dk = static_cast<double>(k) - mk;
            sxy += dk * (e.mean_log_spread[static_cast<Eigen::Index>(k)] - mv);
            sxx += dk * dk;
        }
        s.log_spread_slope = sxy / sxx;
    }
    const bool all_hit = std::all_of(e.hitting_times.begin(), e.hitting_times.end(),
                                     [](const auto& t) { return t.has_value(); });
    if (all_hit || s.log_spread_slope < -slope_tol) {
        s.classification = EmpiricalClass::Converging;
    } else if (2 * e.diverged_trials > e.trials || s.log_spread_slope > slope_tol) {
        s.classification = EmpiricalClass::Diverging;
    } else {
        s.classification = EmpiricalClass::Undecided;
    }
    return s;
}

ConditionParameters condition_parameters(const SignedGraph& g) {
    return {g.n(), g.p_min(), g.p_max(), g.attractive_arc_count()};
}

PhiReport phi_sequence(const SignedGraph& g, const Schedule& schedule, std::size_t count,
                       const Tolerances& tol) {
    const int n = g.n();
    const double c = std::pow(g.p_min() / n, n - 1);
    PhiReport r;
    r.beta_bounded = schedule.beta_bounded();
    r.all_in_unit_interval = true;
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t s = k * static_cast<std::size_t>(n - 1);
        double alpha_prod = 1.0;
        double beta_prod = 1.0;
        for (std::size_t t = s; t < s + static_cast<std::size_t>(n); ++t) {
            alpha_prod *= schedule.alpha_at(t);
            beta_prod *= 1.0 + schedule.beta_at(t);
        }
        const double phi = 1.0 - (1.0 - alpha_prod / 2.0) * c - (1.0 - c) * beta_prod;
        const bool inside = phi >= 0.0 && phi <= 1.0;
        r.values.push_back(phi);
        r.in_unit_interval.push_back(inside);
        r.all_in_unit_interval = r.all_in_unit_interval && inside;
        sum += phi;
        r.partial_sums.push_back(sum);
    }
    r.condition_met = count > 0 && r.all_in_unit_interval && r.beta_bounded &&
                      -second_half_drop(r.partial_sums) > tol.diagnostic_drop;
    return r;
}

QReport q_sequence(const SignedGraph& g, const Schedule& schedule, int z, std::size_t count) {
    if (z < 1) throw std::invalid_argument("Z must be at least 1");
    const double n = g.n();
    const double repulsive_weight = std::pow(g.p_min() / n, z);
    const double attractive_weight =
        1.0 - std::pow(1.0 - g.p_max() / n, static_cast<double>(g.attractive_arc_count()) * z);
    QReport r;
    r.z = z;
    double sum = 0.0;
    for (std::size_t m = 0; m < count; ++m) {
        double growth = std::log(1.0 / (n - 1.0));
        double shrink = 0.0;
        for (std::size_t k = m * z; k < (m + 1) * z; ++k) {
            const double a = schedule.alpha_at(k);
            if (a >= 1.0) {
                throw GainRangeError("Q(m) needs alpha_k < 1; alpha_" + std::to_string(k) + " = 1");
            }
            growth += std::log1p(schedule.beta_at(k));
            shrink += std::log1p(-a);
        }
        const double q = repulsive_weight * growth + attractive_weight * shrink;
        r.values.push_back(q);
        sum += q;
        r.running_sums.push_back(sum);
        r.running_average.push_back(sum / static_cast<double>(m + 1));
    }
    return r;
}

Matrix no_survivor_probe(const SignedGraph& g, const Schedule& schedule, const StateVector& x0,
                         std::size_t horizon, std::size_t trials, double threshold,
                         std::uint64_t seed, const Tolerances& tol) {
    check_initial(g, x0);
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const int n = g.n();
    constexpr std::size_t kBlock = 64;
    const std::size_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<Matrix> counts(blocks, Matrix::Zero(n, n));

    detail::parallel_for(blocks, 0, [&](std::size_t b) {
        Matrix& acc = counts[b];
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> exceeded(n, n);
        for (std::size_t t = b * kBlock; t < std::min(trials, (b + 1) * kBlock); ++t) {
            CounterRng rng(seed, t);
            StateVector x = x0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) exceeded(i, j) = std::abs(x[i] - x[j]) > threshold;
            }
            for (std::size_t k = 0; k < horizon; ++k) {
                const double alpha = schedule.alpha_at(k);
                const double beta = schedule.beta_at(k);
                const SelectedArc arc = select_arc(g, rng);
                const double v = updated_value(x[arc.target], x[arc.source], arc.kind, alpha, beta);
                if (overflowed(v, tol.overflow)) break;
                x[arc.target] = v;
                const int i = arc.target;
                for (int j = 0; j < n; ++j) {
                    if (std::abs(x[i] - x[j]) > threshold) {
                        exceeded(i, j) = true;
                        exceeded(j, i) = true;
                    }
                }
            }
            acc += exceeded.cast<double>();
        }
    });

    Matrix total = Matrix::Zero(n, n);
    for (const auto& c : counts) total += c;
    return total / static_cast<double>(trials);
}

}  // namespace sgossip
