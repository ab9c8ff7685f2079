#include "sgossip/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgossip/errors.hpp"
#include "sgossip/schedule.hpp"

namespace sgossip {

namespace {

void require_square(const Matrix& M, const char* what) {
    if (M.rows() != M.cols()) {
        throw DimensionError(std::string(what) + ": matrix is not square");
    }
}

double off_diagonal_norm(const Matrix& A) {
    double sum = 0.0;
    const Eigen::Index n = A.rows();
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            if (p != q) sum += A(p, q) * A(p, q);
        }
    }
    return std::sqrt(sum);
}

// One Jacobi rotation annihilating A(p, q), p < q.
void rotate(Matrix& A, Matrix* V, Eigen::Index p, Eigen::Index q) {
    const double apq = A(p, q);
    const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Eigen::Index n = A.rows();
    double* colp = A.col(p).data();
    double* colq = A.col(q).data();
    for (Eigen::Index r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = colp[r];
        const double arq = colq[r];
        colp[r] = c * arp - s * arq;
        colq[r] = s * arp + c * arq;
    }
    A(p, p) -= t * apq;
    A(q, q) += t * apq;
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        A(p, r) = colp[r];
        A(q, r) = colq[r];
    }
    if (V != nullptr) {
        double* vp = V->col(p).data();
        double* vq = V->col(q).data();
        for (Eigen::Index r = 0; r < n; ++r) {
            const double a = vp[r];
            const double b = vq[r];
            vp[r] = c * a - s * b;
            vq[r] = s * a + c * b;
        }
    }
}

}  // namespace

double asymmetry(const Matrix& M) {
    require_square(M, "asymmetry");
    if (M.rows() == 0) return 0.0;
    return (M - M.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
}

SpectrumResult sym_eigenvalues(const Matrix& M, const Tolerances& tol, bool with_vectors) {
    require_square(M, "sym_eigenvalues");
    if (!M.allFinite()) throw Error("sym_eigenvalues: non-finite entry");
    if (asymmetry(M) > tol.symmetric_input) {
        throw NotSymmetricError("sym_eigenvalues: input is not symmetric");
    }
    const Eigen::Index n = M.rows();
    SpectrumResult out;
    if (n == 0) return out;

    Matrix A = 0.5 * (M + M.transpose());
    Matrix V;
    if (with_vectors) V = Matrix::Identity(n, n);

    const double scale = A.norm();
    bool converged = scale == 0.0;
    for (std::size_t sweep = 0; !converged && sweep < tol.jacobi_max_sweeps; ++sweep) {
        if (off_diagonal_norm(A) <= tol.jacobi_offdiag_rel * scale) {
            converged = true;
            break;
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (A(p, q) != 0.0) rotate(A, with_vectors ? &V : nullptr, p, q);
            }
        }
    }
    if (!converged && off_diagonal_norm(A) > tol.jacobi_offdiag_rel * scale) {
        throw NoConvergenceError("sym_eigenvalues: Jacobi sweeps exhausted");
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });
    out.eigenvalues.reserve(n);
    for (Eigen::Index k : order) out.eigenvalues.push_back(A(k, k));
    out.lambda_max = out.eigenvalues.back();
    out.lambda_2 = n >= 2 ? out.eigenvalues[n - 2] : out.lambda_max;

    if (with_vectors) {
        out.eigenvectors.resize(n, n);
        for (Eigen::Index k = 0; k < n; ++k) out.eigenvectors.col(k) = V.col(order[k]);
        for (Eigen::Index k = 0; k < n; ++k) {
            const Vector v = out.eigenvectors.col(k);
            const double r = (M * v - out.eigenvalues[k] * v).cwiseAbs().maxCoeff();
            out.residual = std::max(out.residual, r);
        }
    }
    return out;
}

double spectral_radius(const Matrix& M, const Tolerances& tol) {
    require_square(M, "spectral_radius");
    if (!M.allFinite()) throw Error("spectral_radius: non-finite entry");
    const double norm0 = M.norm();
    if (norm0 == 0.0) return 0.0;

    // B_k = M^m / ||M^m|| with m = 2^k and L_k = log ||M^m|| tracked separately.
    // r_k = log(||M^2m|| / ||M^m||) / m cancels the constant in ||M^m|| ~ C m^p rho^m;
    // the remaining p log 2 / m term (defective eigenvalues) is removed by
    // extrapolating 2 r_k - r_(k-1).
    Matrix B = M / norm0;
    Matrix C(M.rows(), M.cols());
    double log_norm = std::log(norm0);
    double power = 1.0;
    double previous_ratio = 0.0;
    double previous = 0.0;
    for (std::size_t k = 0; k < tol.radius_max_squarings; ++k) {
        C.noalias() = B * B;
        const double c = C.norm();
        if (c == 0.0) return 0.0;
        if (!std::isfinite(c)) throw NoConvergenceError("spectral_radius: overflow");
        const double ratio = (log_norm + std::log(c)) / power;
        log_norm = 2.0 * log_norm + std::log(c);
        power *= 2.0;
        B = C / c;
        if (k > 0) {
            const double estimate = std::exp(2.0 * ratio - previous_ratio);
            if (k > 1 && std::abs(estimate - previous) <= tol.radius_rel * estimate) return estimate;
            previous = estimate;
        }
        previous_ratio = ratio;
    }
    throw NoConvergenceError("spectral_radius: repeated squaring did not settle");
}

double commutator_norm(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols()) {
        throw DimensionError("commutator_norm: operands must be square and of equal size");
    }
    if (A.rows() == 0) return 0.0;
    const Matrix comm = A * B - B * A;
    return comm.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix ones_complement_basis(int n) {
    Matrix Q = Matrix::Zero(n, std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int r = 0; r < k; ++r) Q(r, k - 1) = 1.0 / norm;
        Q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return Q;
}

Matrix consensus_projector(int n) {
    return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
}

double min_eigenvalue_orthogonal_to_ones(const Matrix& M, const Tolerances& tol) {
    require_square(M, "min_eigenvalue_orthogonal_to_ones");
    if (asymmetry(M) > tol.symmetric_input) {
        throw NotSymmetricError("min_eigenvalue_orthogonal_to_ones: input is not symmetric");
    }
    const Matrix Q = ones_complement_basis(static_cast<int>(M.rows()));
    Matrix R = Q.transpose() * M * Q;
    R = 0.5 * (R + R.transpose());
    return sym_eigenvalues(R, tol, false).eigenvalues.front();
}

double weyl_bound(const SignedGraph& g, double alpha, double beta, const Tolerances& tol) {
    check_gains(alpha, beta);
    if (!g.is_symmetric_partition(tol.symmetric_structure)) {
        throw NotSymmetricError("weyl_bound: P_att and P_rep must be symmetric");
    }
    const double n = g.n();
    const double connectivity = min_eigenvalue_orthogonal_to_ones(g.L_att(), tol);
    const double rep_max = g.has_repulsive() ? sym_eigenvalues(g.L_rep(), tol, false).lambda_max : 0.0;
    return 1.0 - (alpha / n) * connectivity + (beta / n) * rep_max;
}

}  // namespace sgossip
