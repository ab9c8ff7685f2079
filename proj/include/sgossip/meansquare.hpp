#pragma once

#include <optional>
#include <vector>

#include "sgossip/schedule.hpp"
#include "sgossip/signed_graph.hpp"
#include "sgossip/tolerances.hpp"

namespace sgossip {

enum class MeanSquareClass { ConvergesSufficient, DivergesSufficient, Inconclusive };

const char* to_string(MeanSquareClass c);

struct SecondMomentReport {
    Matrix op;                       // E[W^T Pi W] (constant gains, or step 0)
    double lambda_max = 0.0;
    double lambda2_full = 0.0;       // second entry of the descending full spectrum
    double lambda2_restricted = 0.0; // min eigenvalue on the complement of 1
    MeanSquareClass classification = MeanSquareClass::Inconclusive;
    // time-varying schedules only
    std::vector<double> log_lambda_max_sums;
    std::vector<double> log_lambda2_sums;
    bool time_varying = false;
};

/// Exact E[W^T (I - 11^T/n) W] summed over every arc realisation.
Matrix second_moment_operator(const SignedGraph& g, double alpha, double beta);

/// Constant gains: classify by lambda_max < 1 and lambda2_restricted > 1
/// (both sufficient only). Time-varying: finite-horizon log-product diagnostics.
SecondMomentReport ms_classify(const SignedGraph& g, const Schedule& schedule,
                               std::size_t horizon = 0,
                               const Tolerances& tol = default_tolerances());

}  // namespace sgossip
