#include "sgossip/expectation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "sgossip/errors.hpp"
#include "sgossip/rng.hpp"
#include "sgossip/spectral.hpp"

namespace sgossip {

const char* to_string(ExpectationClass c) {
    switch (c) {
        case ExpectationClass::Converges: return "Converges";
        case ExpectationClass::Diverges: return "Diverges";
        case ExpectationClass::Critical: return "Critical";
    }
    return "Critical";
}

Matrix mean_update(const SignedGraph& g, double alpha, double beta) {
    check_gains(alpha, beta);
    const double n = g.n();
    return Matrix::Identity(g.n(), g.n()) - (alpha / n) * g.L_att() + (beta / n) * g.L_rep();
}

namespace {

double projected_radius(const Matrix& M, const Tolerances& tol) {
    const double scale = 1.0 + M.cwiseAbs().maxCoeff();
    if ((M - M.transpose()).cwiseAbs().maxCoeff() <= tol.symmetric_structure * scale) {
        const auto spec = sym_eigenvalues(M, tol, false);
        return std::max(std::abs(spec.eigenvalues.front()), std::abs(spec.eigenvalues.back()));
    }
    return spectral_radius(M, tol);
}

}  // namespace

double f_rho(const SignedGraph& g, double alpha, double beta, const Tolerances& tol) {
    const Matrix projected = consensus_projector(g.n()) * mean_update(g, alpha, beta);
    return projected_radius(projected, tol);
}

void check_threshold_hypotheses(const SignedGraph& g, double alpha, const Tolerances& tol) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw GainRangeError("threshold requires alpha in (0,1], got " + std::to_string(alpha));
    }
    if (!g.has_repulsive()) {
        throw EmptyRepulsiveError("no repulsive arcs: f(alpha, beta) does not depend on beta");
    }
    if (!connectivity(g).att_has_rooted_spanning_tree) {
        throw HypothesisError("attractive graph has no rooted spanning tree");
    }
    const bool symmetric = g.is_symmetric_partition(tol.symmetric_structure);
    if (!symmetric && commutator_norm(g.L_att(), g.L_rep()) > tol.commute) {
        throw HypothesisError(
            "L_att and L_rep do not commute and the partition is not symmetric; "
            "a single crossing of f = 1 is not guaranteed");
    }
}

double threshold_beta(const SignedGraph& g, double alpha, double width, const Tolerances& tol) {
    check_threshold_hypotheses(g, alpha, tol);
    if (!(width > 0.0)) throw std::invalid_argument("threshold width must be positive");

    auto f = [&](double beta) { return f_rho(g, alpha, beta, tol); };
    if (f(0.0) >= 1.0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    const double cap = std::ldexp(1.0, 60);
    while (f(hi) <= 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) throw NoConvergenceError("threshold_beta: no bracket below 2^60");
    }
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ExpectationReport classify_expectation(const SignedGraph& g, double alpha, double beta,
                                       const Tolerances& tol) {
    ExpectationReport r;
    r.n = g.n();
    r.alpha = alpha;
    r.beta = beta;
    r.w_bar = mean_update(g, alpha, beta);
    r.f_value = projected_radius(consensus_projector(g.n()) * r.w_bar, tol);
    if (r.f_value < 1.0 - tol.critical_band) {
        r.classification = ExpectationClass::Converges;
    } else if (r.f_value > 1.0 + tol.critical_band) {
        r.classification = ExpectationClass::Diverges;
    } else {
        r.classification = ExpectationClass::Critical;
    }
    if (g.is_symmetric_partition(tol.symmetric_structure)) {
        r.weyl_bound = weyl_bound(g, alpha, beta, tol);
    }
    try {
        r.threshold_beta = threshold_beta(g, alpha, 1e-9, tol);
    } catch (const Error&) {
        r.threshold_beta.reset();
    }
    return r;
}

bool is_complete_uniform(const SignedGraph& g, const Tolerances& tol) {
    const int n = g.n();
    const double w = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double expected = i == j ? 0.0 : w;
            if (std::abs(g.P()(i, j) - expected) > tol.stochastic) return false;
        }
    }
    return g.is_symmetric_partition(tol.symmetric_structure);
}

double complete_graph_threshold(const SignedGraph& g, double alpha, const Tolerances& tol) {
    check_gains(alpha, 0.0);
    if (!is_complete_uniform(g, tol)) {
        throw NotCompleteUniformError(
            "closed form needs P = (11^T - I)/(n-1) with a bidirectional partition");
    }
    if (!g.has_repulsive()) {
        throw EmptyRepulsiveError("no repulsive arcs: threshold undefined");
    }
    const double n = g.n();
    const double rep_max = sym_eigenvalues(g.L_rep(), tol, false).lambda_max;
    const double value = std::max((n / ((n - 1.0) * rep_max) - 1.0) * alpha, 0.0);
    if (!connectivity(g).att_has_rooted_spanning_tree) {
        throw HypothesisError("attractive graph has no rooted spanning tree (closed form evaluates to " +
                              std::to_string(value) + ")");
    }
    return value;
}

double er_threshold(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw GainRangeError("alpha must lie in (0,1]");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw GainRangeError("beta must be positive and finite");
    }
    return alpha / (alpha + beta);
}

std::vector<SweepPoint> er_sweep(int n, const std::vector<double>& p_grid, double alpha,
                                 double beta, int samples, std::uint64_t seed,
                                 const Tolerances& tol) {
    if (samples < 1) throw std::invalid_argument("er_sweep needs at least one sample");
    check_gains(alpha, beta);
    const std::size_t per_point = static_cast<std::size_t>(samples);
    std::vector<double> xi(p_grid.size() * per_point);
    detail::parallel_for(xi.size(), 0, [&](std::size_t task) {
        const std::size_t point = task / per_point;
        const std::size_t sample = task % per_point;
        const SignedGraph g = er_repulsive(n, p_grid[point], derive_seed(seed, point, sample));
        xi[task] = f_rho(g, alpha, beta, tol);
    });

    std::vector<SweepPoint> out;
    for (std::size_t point = 0; point < p_grid.size(); ++point) {
        SweepPoint sp;
        sp.p = p_grid[point];
        sp.samples = samples;
        sp.seed = seed;
        int converging = 0;
        for (std::size_t s = 0; s < per_point; ++s) {
            const double v = xi[point * per_point + s];
            sp.xi.push_back(v);
            if (v < 1.0) ++converging;
        }
        sp.fraction_converging = static_cast<double>(converging) / samples;
        out.push_back(std::move(sp));
    }
    return out;
}

double second_half_drop(const std::vector<double>& partial_sums) {
    if (partial_sums.empty()) return 0.0;
    const std::size_t h = partial_sums.size();
    const double end = partial_sums.back();
    if (end == -std::numeric_limits<double>::infinity()) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t half = h / 2;
    const double mid = half == 0 ? 0.0 : partial_sums[half - 1];
    return mid - end;
}

ProductDiagnostic product_convergence_check(const SignedGraph& g, const Schedule& schedule,
                                            std::size_t horizon, const Tolerances& tol) {
    ProductDiagnostic d;
    const Matrix pi = consensus_projector(g.n());
    const bool symmetric = g.is_symmetric_partition(tol.symmetric_structure);
    double connectivity_value = 0.0;
    double rep_max = 0.0;
    if (symmetric) {
        connectivity_value = min_eigenvalue_orthogonal_to_ones(g.L_att(), tol);
        rep_max = g.has_repulsive() ? sym_eigenvalues(g.L_rep(), tol, false).lambda_max : 0.0;
        d.weyl_log_partial_sums.emplace();
    }

    double cached_alpha = std::numeric_limits<double>::quiet_NaN();
    double cached_beta = cached_alpha;
    double cached_log = 0.0;
    double sum = 0.0;
    double weyl_sum = 0.0;
    const double n = g.n();
    for (std::size_t k = 0; k < horizon; ++k) {
        const double a = schedule.alpha_at(k);
        const double b = schedule.beta_at(k);
        if (a != cached_alpha || b != cached_beta) {
            const Matrix w = mean_update(g, a, b);
            Matrix s = w.transpose() * pi * w;
            s = 0.5 * (s + s.transpose());
            const double factor = sym_eigenvalues(s, tol, false).lambda_max;
            cached_log = factor > 0.0 ? std::log(factor) : -std::numeric_limits<double>::infinity();
            cached_alpha = a;
            cached_beta = b;
        }
        sum += cached_log;
        d.log_partial_sums.push_back(sum);
        if (symmetric) {
            const double factor = 1.0 - (a / n) * connectivity_value + (b / n) * rep_max;
            weyl_sum += factor > 0.0 ? std::log(factor) : -std::numeric_limits<double>::infinity();
            d.weyl_log_partial_sums->push_back(weyl_sum);
        }
    }
    d.sufficient_condition_met = second_half_drop(d.log_partial_sums) > tol.diagnostic_drop;
    if (symmetric) {
        d.weyl_condition_met = second_half_drop(*d.weyl_log_partial_sums) > tol.diagnostic_drop;
    }
    return d;
}

}  // namespace sgossip
