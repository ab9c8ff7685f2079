#include "sgossip/meansquare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sgossip/errors.hpp"
#include "sgossip/expectation.hpp"
#include "sgossip/spectral.hpp"

namespace sgossip {

const char* to_string(MeanSquareClass c) {
    switch (c) {
        case MeanSquareClass::ConvergesSufficient: return "ConvergesSufficient";
        case MeanSquareClass::DivergesSufficient: return "DivergesSufficient";
        case MeanSquareClass::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Matrix second_moment_operator(const SignedGraph& g, double alpha, double beta) {
    check_gains(alpha, beta);
    const int n = g.n();
    const double inv_n = 1.0 / n;

    // A = I + c e_i d^T with d = e_i - e_j:
    //   A^T Pi A = Pi + c (d u^T + u d^T) + c^2 (1 - 1/n) d d^T,   u = Pi e_i.
    Matrix corr = Matrix::Zero(n, n);
    auto add_arc = [&](const Arc& arc, double c) {
        const double w = arc.weight * inv_n;
        const int i = arc.target;
        const int j = arc.source;
        const double wc = w * c;
        for (int r = 0; r < n; ++r) {
            const double u_r = (r == i ? 1.0 : 0.0) - inv_n;
            corr(i, r) += wc * u_r;
            corr(j, r) -= wc * u_r;
            corr(r, i) += wc * u_r;
            corr(r, j) -= wc * u_r;
        }
        const double q = w * c * c * (1.0 - inv_n);
        corr(i, i) += q;
        corr(j, j) += q;
        corr(i, j) -= q;
        corr(j, i) -= q;
    };
    for (const Arc& a : g.att_arcs()) add_arc(a, -alpha);
    for (const Arc& a : g.rep_arcs()) add_arc(a, beta);

    // Arc realisations carry mass sum p_ij / n and each contributes Pi plus its
    // correction; any remaining mass is the identity update, which contributes Pi.
    return consensus_projector(n) + corr;
}

namespace {

struct MomentSpectrum {
    double lambda_max;
    double lambda2_full;
    double lambda2_restricted;
};

MomentSpectrum moment_spectrum(const Matrix& op, const Tolerances& tol) {
    const auto spec = sym_eigenvalues(op, tol, false);
    return {spec.lambda_max, spec.lambda_2, min_eigenvalue_orthogonal_to_ones(op, tol)};
}

}  // namespace

SecondMomentReport ms_classify(const SignedGraph& g, const Schedule& schedule,
                               std::size_t horizon, const Tolerances& tol) {
    SecondMomentReport r;
    r.op = second_moment_operator(g, schedule.alpha_at(0), schedule.beta_at(0));
    const MomentSpectrum first = moment_spectrum(r.op, tol);
    r.lambda_max = first.lambda_max;
    r.lambda2_full = first.lambda2_full;
    r.lambda2_restricted = first.lambda2_restricted;

    if (schedule.is_constant()) {
        if (r.lambda_max < 1.0 - tol.mean_square_band) {
            r.classification = MeanSquareClass::ConvergesSufficient;
        } else if (r.lambda2_restricted > 1.0 + tol.mean_square_band) {
            r.classification = MeanSquareClass::DivergesSufficient;
        } else {
            r.classification = MeanSquareClass::Inconclusive;
        }
        return r;
    }

    if (horizon == 0) throw std::invalid_argument("time-varying schedule needs a horizon");
    r.time_varying = true;
    auto safe_log = [](double v) {
        return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    };
    double sum_max = 0.0;
    double sum_2 = 0.0;
    double cached_alpha = std::numeric_limits<double>::quiet_NaN();
    double cached_beta = cached_alpha;
    MomentSpectrum cached = first;
    for (std::size_t k = 0; k < horizon; ++k) {
        const double a = schedule.alpha_at(k);
        const double b = schedule.beta_at(k);
        if (k > 0 && (a != cached_alpha || b != cached_beta)) {
            cached = moment_spectrum(second_moment_operator(g, a, b), tol);
        }
        cached_alpha = a;
        cached_beta = b;
        sum_max += safe_log(cached.lambda_max);
        sum_2 += safe_log(cached.lambda2_restricted);
        r.log_lambda_max_sums.push_back(sum_max);
        r.log_lambda2_sums.push_back(sum_2);
    }
    if (second_half_drop(r.log_lambda_max_sums) > tol.diagnostic_drop) {
        r.classification = MeanSquareClass::ConvergesSufficient;
    } else if (-second_half_drop(r.log_lambda2_sums) > tol.diagnostic_drop) {
        r.classification = MeanSquareClass::DivergesSufficient;
    } else {
        r.classification = MeanSquareClass::Inconclusive;
    }
    return r;
}

}  // namespace sgossip
