#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical kernels; each value is rebuilt from first
// principles or from Eigen's own solvers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sgossip/signed_graph.hpp"

namespace oracle {

using sgossip::Matrix;
using sgossip::Vector;

inline double cofactor_det(const Matrix& m) {
    const auto n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double det = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Matrix minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k == c) continue;
                minor(r - 1, cc++) = m(r, k);
            }
        }
        det += ((c % 2) ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
    }
    return det;
}

inline Matrix projector(int n) {
    return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
}

/// W for one realisation: arc j -> i with coefficient c (-alpha or +beta).
inline Matrix realisation(int n, int i, int j, double c) {
    Matrix w = Matrix::Identity(n, n);
    w(i, i) += c;
    w(i, j) -= c;
    return w;
}

/// E[W] by enumerating every arc.
inline Matrix enumerated_mean(const sgossip::SignedGraph& g, double alpha, double beta) {
    const int n = g.n();
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pa = g.P_att()(i, j), pr = g.P_rep()(i, j);
            if (pa > 0) out += (pa / n) * realisation(n, i, j, -alpha);
            if (pr > 0) out += (pr / n) * realisation(n, i, j, beta);
        }
    }
    return out;
}

/// E[W^T Pi W] by enumerating every arc.
inline Matrix enumerated_second_moment(const sgossip::SignedGraph& g, double alpha, double beta) {
    const int n = g.n();
    const Matrix pi = projector(n);
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pa = g.P_att()(i, j), pr = g.P_rep()(i, j);
            if (pa > 0) {
                const Matrix w = realisation(n, i, j, -alpha);
                out += (pa / n) * w.transpose() * pi * w;
            }
            if (pr > 0) {
                const Matrix w = realisation(n, i, j, beta);
                out += (pr / n) * w.transpose() * pi * w;
            }
        }
    }
    return out;
}

inline double eigen_spectral_radius(const Matrix& m) {
    Eigen::EigenSolver<Matrix> es(m, false);
    double r = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) r = std::max(r, std::abs(es.eigenvalues()[k]));
    return r;
}

inline Vector eigen_sym_values(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// f(alpha, beta) = rho(Pi W) via Eigen's general eigensolver.
inline double f_value(const sgossip::SignedGraph& g, double alpha, double beta) {
    return eigen_spectral_radius(projector(g.n()) * enumerated_mean(g, alpha, beta));
}

inline double closed_form_threshold(const sgossip::SignedGraph& g, double alpha) {
    const int n = g.n();
    const double lmax = eigen_sym_values(g.L_rep()).maxCoeff();
    return std::max((n / ((n - 1) * lmax) - 1.0) * alpha, 0.0);
}

/// Symmetric row-stochastic P with zero diagonal as a convex combination of
/// Hamiltonian-cycle adjacencies divided by 2; each undirected edge is then
/// made repulsive with probability rep_p.
inline sgossip::SignedGraph random_symmetric_partition(std::mt19937_64& rng, int n, double rep_p,
                                                       int cycles = 3) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> c(cycles);
    for (auto& v : c) v = u(rng);
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    Matrix p = Matrix::Zero(n, n);
    std::vector<int> perm(n);
    for (int k = 0; k < cycles; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int t = 0; t < n; ++t) {
            const int a = perm[t], b = perm[(t + 1) % n];
            p(a, b) += c[k] / total / 2.0;
            p(b, a) += c[k] / total / 2.0;
        }
    }
    std::bernoulli_distribution rep(rep_p);
    std::vector<sgossip::Arc> att, rp;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (p(a, b) <= 0) continue;
            auto& set = rep(rng) ? rp : att;
            set.push_back({a, b, p(b, a)});
            set.push_back({b, a, p(a, b)});
        }
    }
    return sgossip::build_partition(n, att, rp);
}

/// Random undirected edge list, each pair present with probability q.
inline std::vector<sgossip::NodePair> random_edges(std::mt19937_64& rng, int n, double q) {
    std::bernoulli_distribution keep(q);
    std::vector<sgossip::NodePair> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (keep(rng)) edges.emplace_back(a, b);
        }
    }
    return edges;
}

/// Phi written as (1 - B) + c (B - 1 + A/2) with products taken through logs.
inline double phi_value(int n, double p_min, const std::vector<double>& alphas,
                        const std::vector<double>& betas) {
    double log_a = 0.0, log_b = 0.0;
    for (double a : alphas) log_a += std::log(a);
    for (double b : betas) log_b += std::log(1.0 + b);
    const double a_prod = std::exp(log_a), b_prod = std::exp(log_b);
    const double c = std::exp((n - 1) * std::log(p_min / n));
    return (1.0 - b_prod) + c * (b_prod - 1.0 + a_prod / 2.0);
}

/// Q from window products, then a single log each.
inline double q_value(int n, double p_min, double p_max, std::size_t e0,
                      const std::vector<double>& alphas, const std::vector<double>& betas) {
    const int z = static_cast<int>(alphas.size());
    double a_prod = 1.0, b_prod = 1.0;
    for (double a : alphas) a_prod *= 1.0 - a;
    for (double b : betas) b_prod *= 1.0 + b;
    const double w_rep = std::exp(z * std::log(p_min / n));
    const double w_att = 1.0 - std::exp(static_cast<double>(e0) * z * std::log(1.0 - p_max / n));
    return w_rep * std::log(b_prod / (n - 1)) + w_att * std::log(a_prod);
}

}  // namespace oracle
