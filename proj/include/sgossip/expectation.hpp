#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgossip/schedule.hpp"
#include "sgossip/signed_graph.hpp"
#include "sgossip/tolerances.hpp"

namespace sgossip {

enum class ExpectationClass { Converges, Diverges, Critical };

const char* to_string(ExpectationClass c);

struct ExpectationReport {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    Matrix w_bar;
    double f_value = 0.0;
    ExpectationClass classification = ExpectationClass::Critical;
    std::optional<double> weyl_bound;
    std::optional<double> threshold_beta;
};

/// Mean update W = I - (alpha/n) L_att + (beta/n) L_rep.
Matrix mean_update(const SignedGraph& g, double alpha, double beta);

/// f(alpha, beta) = rho((I - 11^T/n) W).
double f_rho(const SignedGraph& g, double alpha, double beta,
             const Tolerances& tol = default_tolerances());

/// Classifies with the critical band |f - 1| <= tol.critical_band. Attaches the
/// Weyl bound when the partition is symmetric, and the threshold beta when its
/// hypotheses hold.
ExpectationReport classify_expectation(const SignedGraph& g, double alpha, double beta,
                                       const Tolerances& tol = default_tolerances());

/// Throws HypothesisError / EmptyRepulsiveError / GainRangeError when the
/// single-crossing guarantee does not apply.
void check_threshold_hypotheses(const SignedGraph& g, double alpha,
                                const Tolerances& tol = default_tolerances());

/// Bracket (doubling from beta = 1) then bisection to width `width`.
double threshold_beta(const SignedGraph& g, double alpha, double width = 1e-9,
                      const Tolerances& tol = default_tolerances());

/// True when P = (11^T - I)/(n-1) and the partition is bidirectional.
bool is_complete_uniform(const SignedGraph& g, const Tolerances& tol = default_tolerances());

/// max{(n/((n-1) lambda_max(L_rep)) - 1) alpha, 0}.
/// Throws NotCompleteUniformError, or HypothesisError when G_att has no spanning tree.
double complete_graph_threshold(const SignedGraph& g, double alpha,
                                const Tolerances& tol = default_tolerances());

/// p = alpha / (alpha + beta).
double er_threshold(double alpha, double beta);

struct SweepPoint {
    double p = 0.0;
    double fraction_converging = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> xi;  // f for each sample, in sample order
};

/// For each p draws `samples` Erdos-Renyi repulsive partitions of the complete
/// uniform graph and reports the fraction with xi_n = f(alpha, beta) < 1.
std::vector<SweepPoint> er_sweep(int n, const std::vector<double>& p_grid, double alpha,
                                 double beta, int samples, std::uint64_t seed,
                                 const Tolerances& tol = default_tolerances());

struct ProductDiagnostic {
    std::vector<double> log_partial_sums;        // sum of log lambda_max(W_k^T Pi W_k)
    std::optional<std::vector<double>> weyl_log_partial_sums;  // symmetric partitions only
    bool sufficient_condition_met = false;
    std::optional<bool> weyl_condition_met;
    bool not_a_proof = true;
};

/// Finite-horizon diagnostic for the infinite-product criteria. The condition
/// counts as met when the log partial sum drops by more than tol.diagnostic_drop
/// over the second half of the horizon.
ProductDiagnostic product_convergence_check(const SignedGraph& g, const Schedule& schedule,
                                            std::size_t horizon,
                                            const Tolerances& tol = default_tolerances());

/// Drop S(h/2) - S(h) of a partial-sum series over its second half.
double second_half_drop(const std::vector<double>& partial_sums);

}  // namespace sgossip
