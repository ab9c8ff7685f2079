#pragma once

#include <cstddef>

namespace sgossip {

/// Numerical thresholds shared by every module. Tests may tighten them.
struct Tolerances {
    double stochastic = 1e-12;          // row sums of P, structural comparisons
    double symmetric_input = 1e-10;     // max |M - M^T| accepted by sym_eigenvalues
    double symmetric_structure = 1e-12; // "is this partition symmetric"
    double jacobi_offdiag_rel = 1e-12;  // stop when off(A) <= rel * ||A||_F
    std::size_t jacobi_max_sweeps = 100;
    double radius_rel = 1e-8;           // successive repeated-squaring estimates
    std::size_t radius_max_squarings = 60;
    double critical_band = 1e-7;        // |f - 1| <= band  =>  Critical
    double mean_square_band = 1e-9;
    double commute = 1e-10;             // ||L_att L_rep - L_rep L_att||_inf
    double overflow = 1e150;            // simulator abort level for |x_i|
    double approx_consensus_rel = 1e-12;
    double diagnostic_drop = 1e-3;      // finite-horizon log-sum trend threshold
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace sgossip
