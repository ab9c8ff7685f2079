// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "../common/oracles.hpp"
#include "sgossip/expectation.hpp"
#include "sgossip/meansquare.hpp"
#include "sgossip/simulator.hpp"
#include "sgossip/spectral.hpp"

using namespace sgossip;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Vector ramp(int n) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = i;
    return x;
}

Outcome closed_form_threshold() {
    double worst = 0.0;
    for (int n = 3; n <= 10; ++n) {
        const auto g = complete_uniform(n, {{0, 1}});
        for (double a : {0.25, 0.5, 1.0}) {
            worst = std::max(worst, std::abs(threshold_beta(g, a) - oracle::closed_form_threshold(g, a)));
        }
    }
    return {worst <= 1e-6, fmt("24 instances, max |bisection - closed form| = %.3g", worst)};
}

Outcome commutation() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = 3 + t % 8;
        std::vector<NodePair> all;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
        worst = std::max(worst, commutator_norm(laplacian_of_edges(n, all),
                                                laplacian_of_edges(n, oracle::random_edges(rng, n, 0.5))));
    }
    return {worst <= 1e-12, fmt("50 graphs, max ||[L_K, L_G]||_inf = %.3g", worst)};
}

Outcome weyl_dominance() {
    std::mt19937_64 rng(202);
    double worst = -1e300;
    int evaluations = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 3 + t % 18;
        const auto g = oracle::random_symmetric_partition(rng, n, 0.3);
        for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            for (double b : {0.0, 0.5, 1.0, 2.0, 4.0}) {
                worst = std::max(worst, f_rho(g, a, b) - weyl_bound(g, a, b));
                ++evaluations;
            }
        }
    }
    return {worst <= 1e-8, fmt("%.0f evaluations, max (f - bound) = %.3g", evaluations, worst)};
}

Outcome monotonicity() {
    std::mt19937_64 rng(303);
    std::vector<SignedGraph> graphs{complete_uniform(4, {{0, 1}}), complete_uniform(6, {{0, 1}, {2, 5}}),
                                    ring_uniform(6, {{0, 1}}), ring_uniform(7, {{0, 1}, {3, 4}})};
    for (int t = 0; t < 4; ++t) graphs.push_back(oracle::random_symmetric_partition(rng, 5 + 2 * t, 0.3));
    double worst = 0.0;
    for (const auto& g : graphs) {
        std::vector<std::vector<double>> f(11, std::vector<double>(21));
        for (int a = 0; a <= 10; ++a)
            for (int b = 0; b <= 20; ++b) f[a][b] = f_rho(g, a / 10.0, b * 0.25);
        for (int a = 0; a <= 10; ++a) {
            for (int b = 0; b <= 20; ++b) {
                if (a < 10) worst = std::max(worst, f[a + 1][b] - f[a][b]);
                if (b < 20) worst = std::max(worst, f[a][b] - f[a][b + 1]);
            }
        }
    }
    return {worst <= 1e-8, fmt("%.0f graphs on the 11 x 21 grid, max violation = %.3g",
                               static_cast<double>(graphs.size()), worst)};
}

Outcome ring_bound() {
    double worst = -1e300;
    for (int n = 4; n <= 12; ++n) {
        const auto g = ring_uniform(n, {{0, 1}});
        for (double a : {0.3, 0.7, 1.0}) worst = std::max(worst, threshold_beta(g, a) - a);
    }
    return {worst <= 1e-6, fmt("27 instances, max (beta* - alpha) = %.3g", worst)};
}

Outcome expectation_recursion() {
    const auto g = complete_uniform(4, {{0, 1}});
    const double alpha = 0.5;
    const double star = threshold_beta(g, alpha);
    const std::size_t horizon = 50;
    const std::size_t trials = 100000;
    bool pass = true;
    double worst_z = 0.0;
    double ratio_low = 0.0, ratio_high = 0.0;
    for (double factor : {0.5, 2.0}) {
        const double beta = factor * star;
        const auto e = monte_carlo(g, Schedule::constant(alpha, beta), ramp(4), horizon, trials, 606);
        const Matrix m = oracle::projector(4) * oracle::enumerated_mean(g, alpha, beta);
        Vector y = oracle::projector(4) * ramp(4);
        for (std::size_t k = 0; k <= horizon; ++k) {
            for (int i = 0; i < 4; ++i) {
                const double diff = std::abs(e.mean_y(k, i) - y[i]);
                const double se = e.se_y(k, i);
                const double z = se > 0 ? diff / se : (diff == 0 ? 0.0 : 1e300);
                worst_z = std::max(worst_z, z);
            }
            y = m * y;
        }
        const double ratio = e.mean_y.row(horizon).norm() / e.mean_y.row(0).norm();
        (factor < 1 ? ratio_low : ratio_high) = ratio;
    }
    pass = worst_z <= 5.0 && ratio_low < 1.0 && ratio_high > 1.0;
    return {pass, fmt("beta* = %.6f, max |mean - recursion| / se = %.2f, "
                      "|E y(50)| / |y(0)| = %.3g below and %.3g above",
                      star, worst_z, ratio_low, ratio_high)};
}

Outcome erdos_renyi() {
    // Fixed seed chosen before the run; the claim is asymptotic in n, so at
    // n = 300 the p = 0.4 fraction is a finite-size estimate.
    const auto points = er_sweep(300, {0.4, 0.6}, 0.5, 0.5, 30, 1);
    const double low = points[0].fraction_converging;
    const double high = points[1].fraction_converging;
    return {low >= 0.9 && high <= 0.1,
            fmt("n = 300, 30 samples: fraction(xi < 1) = %.3f at p = 0.4 (need >= 0.9), "
                "%.3f at p = 0.6 (need <= 0.1)",
                low, high)};
}

Outcome finite_time_consensus() {
    const auto g = complete_uniform(3, {});
    const std::size_t trials = 10000;
    const auto e = monte_carlo(g, Schedule::constant(1.0, 0.0), ramp(3), 10000, trials, 808);
    std::size_t hits = 0;
    double total = 0.0;
    for (const auto& t : e.hitting_times) {
        if (t) {
            ++hits;
            total += static_cast<double>(*t);
        }
    }
    const double mean = hits ? total / hits : INFINITY;
    const double bound = (3 - 1) * std::pow(3 / g.p_min(), 3 - 1);
    return {hits == trials && mean <= bound,
            fmt("%.0f / %.0f trials reached consensus, mean T0 = %.3f (bound %.0f)",
                static_cast<double>(hits), static_cast<double>(trials), mean, bound)};
}

Outcome second_moment_oracle() {
    std::vector<SignedGraph> graphs{complete_uniform(3, {}), complete_uniform(3, {{0, 1}}),
                                    complete_uniform(4, {{0, 1}}), complete_uniform(5, {{0, 1}, {2, 4}}),
                                    ring_uniform(4, {{0, 1}}), ring_uniform(5, {{1, 2}, {3, 4}}),
                                    build_partition(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{2, 0, 1.0}})};
    std::mt19937_64 rng(909);
    for (int n = 3; n <= 5; ++n) graphs.push_back(oracle::random_symmetric_partition(rng, n, 0.4));

    double worst_entry = 0.0;
    for (const auto& g : graphs)
        for (double a : {0.0, 0.3, 1.0})
            for (double b : {0.0, 0.7, 5.0})
                worst_entry = std::max(worst_entry, (second_moment_operator(g, a, b) -
                                                     oracle::enumerated_second_moment(g, a, b))
                                                        .cwiseAbs()
                                                        .maxCoeff());

    std::normal_distribution<double> d;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_sandwich = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto& g = graphs[t % graphs.size()];
        const int n = g.n();
        const double a = u(rng), b = 3.0 * u(rng);
        const auto r = ms_classify(g, Schedule::constant(a, b));
        const Matrix pi = oracle::projector(n);
        Vector x(n);
        for (int k = 0; k < n; ++k) x[k] = d(rng);
        const Vector y = pi * x;
        double next = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (g.P_att()(i, j) > 0)
                    next += g.P_att()(i, j) / n * (pi * oracle::realisation(n, i, j, -a) * y).squaredNorm();
                if (g.P_rep()(i, j) > 0)
                    next += g.P_rep()(i, j) / n * (pi * oracle::realisation(n, i, j, b) * y).squaredNorm();
            }
        }
        const double y2 = y.squaredNorm();
        worst_sandwich = std::max({worst_sandwich, r.lambda2_restricted * y2 - next, next - r.lambda_max * y2});
    }
    return {worst_entry <= 1e-12 && worst_sandwich <= 1e-9,
            fmt("%.0f graphs, max entry error = %.3g; 1000 vectors, max sandwich violation = %.3g",
                static_cast<double>(graphs.size()), worst_entry, worst_sandwich)};
}

Outcome condition_evaluators() {
    const auto k3 = complete_uniform(3, {});
    const auto phi = phi_sequence(k3, Schedule::constant(1.0, 0.0), 1);
    const double phi_ref = oracle::phi_value(3, 0.5, {1, 1, 1}, {0, 0, 0});

    const auto g = complete_uniform(3, {{0, 1}});
    const auto q = q_sequence(g, Schedule::constant(0.5, 3.0), 1, 1);
    const double q_ref = oracle::q_value(3, 0.5, 0.5, 4, {0.5}, {3.0});

    const double e_phi = std::max(std::abs(phi.values[0] - phi_ref), std::abs(phi.values[0] - 1.0 / 72));
    const double e_q = std::abs(q.values[0] - q_ref);
    return {e_phi <= 1e-12 && e_q <= 1e-12 && std::abs(q.values[0] + 0.2433) < 5e-4,
            fmt("Phi = %.15f (|err| %.2g), Q = %.15f (|err| %.2g)", phi.values[0], e_phi, q.values[0], e_q)};
}

Outcome pathwise_invariants() {
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    int absorbed_runs = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 3 + t % 6;
        const auto g = oracle::random_symmetric_partition(rng, n, t % 3 == 0 ? 0.0 : 0.3);
        const double alpha = t % 4 == 0 ? 1.0 : u(rng);
        const double beta = t % 3 == 0 ? 0.0 : 3.0 * u(rng);
        Vector x0(n);
        for (int i = 0; i < n; ++i) x0[i] = 10.0 * u(rng) - 5.0;
        if (t % 10 == 0) x0.setConstant(x0[0]);
        const auto run_t = run(g, Schedule::constant(alpha, beta), x0, 80, t);
        for (std::size_t r = 1; r < run_t.spread.size(); ++r) {
            if (beta == 0.0 && run_t.spread[r] > run_t.spread[r - 1]) ++violations;
            const double scale = std::max(std::abs(run_t.min[r - 1]), std::abs(run_t.max[r - 1]));
            const double slack = 8 * std::numeric_limits<double>::epsilon() * (1.0 + beta) * scale;
            if (run_t.spread[r] > (1.0 + beta) * run_t.spread[r - 1] + slack) ++violations;
        }
        if (run_t.hitting_time) {
            ++absorbed_runs;
            for (std::size_t r = 0; r < run_t.steps.size(); ++r) {
                if (run_t.steps[r] >= *run_t.hitting_time &&
                    (run_t.spread[r] != 0.0 || run_t.states[r] != run_t.final_state))
                    ++violations;
            }
        }
    }
    return {violations == 0, fmt("1000 runs (%.0f reached consensus), %.0f violations",
                                 static_cast<double>(absorbed_runs), static_cast<double>(violations))};
}

Outcome no_survivor() {
    // beta = 5 at alpha 0.9 diverges in mean only: the log-spread drift is negative
    // and most paths collapse, so the probe runs deep in the pathwise-divergent regime
    const auto g = complete_uniform(4, {{0, 1}});
    const Schedule s = Schedule::constant(0.9, 50.0);
    const auto e = monte_carlo(g, s, ramp(4), 400, 200, 1213);
    const double slope = classify_trend(e).log_spread_slope;
    const Matrix f = no_survivor_probe(g, s, ramp(4), 5000, 1000, 10.0, 1212);
    double worst = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) worst = std::min(worst, f(i, j));
    return {slope > 0.0 && worst >= 0.99,
            fmt("K4 one repulsive pair, alpha 0.9, beta 50 (beta* 0.9), log-spread slope %.3f, M* = 10: "
                "min pair fraction = %.3f",
                slope, worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 closed-form threshold", closed_form_threshold},
        {"2 Laplacian commutation", commutation},
        {"3 Weyl bound dominance", weyl_dominance},
        {"4 monotonicity in alpha and beta", monotonicity},
        {"5 ring threshold bound", ring_bound},
        {"6 expectation recursion", expectation_recursion},
        {"7 Erdos-Renyi threshold", erdos_renyi},
        {"8 finite-time consensus", finite_time_consensus},
        {"9 second-moment oracle and sandwich", second_moment_oracle},
        {"10 Phi and Q evaluators", condition_evaluators},
        {"11 pathwise invariants", pathwise_invariants},
        {"no-survivor probe", no_survivor},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("[%s] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu checks failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
