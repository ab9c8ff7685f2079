#pragma once

#include <vector>

#include "sgossip/signed_graph.hpp"
#include "sgossip/tolerances.hpp"

namespace sgossip {

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    double lambda_max = 0.0;
    double lambda_2 = 0.0;            // second entry of the descending list, with multiplicity
    double residual = 0.0;            // max_i ||M v_i - lambda_i v_i||_inf, 0 when vectors skipped
    Matrix eigenvectors;              // columns match `eigenvalues`; empty when skipped
};

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
/// Throws NotSymmetricError if ||M - M^T||_inf exceeds tol.symmetric_input,
/// NoConvergenceError after tol.jacobi_max_sweeps sweeps.
SpectrumResult sym_eigenvalues(const Matrix& M, const Tolerances& tol = default_tolerances(),
                               bool with_vectors = true);

/// rho(M) = max |lambda_i| for a general real matrix, via repeated squaring
/// rho ~ ||M^(2^k)||^(1/2^k) with renormalisation at every step.
double spectral_radius(const Matrix& M, const Tolerances& tol = default_tolerances());

/// ||AB - BA||_inf. Throws DimensionError on shape mismatch.
double commutator_norm(const Matrix& A, const Matrix& B);

/// max row sum of |M - M^T|
double asymmetry(const Matrix& M);

/// Smallest eigenvalue of a symmetric matrix restricted to the complement of 1.
double min_eigenvalue_orthogonal_to_ones(const Matrix& M, const Tolerances& tol = default_tolerances());

/// Orthonormal basis (n x (n-1)) of the subspace orthogonal to the all-ones vector.
Matrix ones_complement_basis(int n);

/// Projection I - 11^T/n.
Matrix consensus_projector(int n);

/// Upper bound 1 - (alpha/n) a(L_att) + (beta/n) lambda_max(L_rep) on f(alpha, beta), where
/// a(L_att) is the smallest eigenvalue of L_att on the complement of 1 (algebraic
/// connectivity). Requires symmetric P_att and P_rep, else NotSymmetricError.
double weyl_bound(const SignedGraph& g, double alpha, double beta,
                  const Tolerances& tol = default_tolerances());

}  // namespace sgossip
