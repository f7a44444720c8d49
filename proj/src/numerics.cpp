#include "epq/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace epq {

namespace {

void check_square_small(const Eigen::Ref<const Eigen::MatrixXcd>& M) {
    if (M.rows() != M.cols())
        throw DomainError("matrix must be square");
    if (M.rows() > 4)
        throw DimensionTooLarge("dense kernel handles dim <= 4");
    if (!M.allFinite())
        throw DomainError("matrix has non-finite entries");
}

// Best assignment of left pairs (mu_j, w_j) to right eigenvalues, minimizing
// sum |conj(mu_j) - lambda_k|.  n <= 4 so brute force over permutations.
std::vector<int> match_conjugate_pairs(const Eigen::VectorXcd& lambda,
                                       const Eigen::VectorXcd& mu) {
    const int n = static_cast<int>(lambda.size());
    std::vector<int> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = -1.0;
    do {
        double cost = 0.0;
        for (int k = 0; k < n; ++k)
            cost += std::abs(std::conj(mu[perm[k]]) - lambda[k]);
        if (best_cost < 0.0 || cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

bool SpectralDecomposition::any_flagged() const {
    return std::any_of(condition_flags.begin(), condition_flags.end(),
                       [](bool f) { return f; });
}

SpectralDecomposition eig_general(const Eigen::Ref<const Eigen::MatrixXcd>& M,
                                  double tol) {
    check_square_small(M);
    const int n = static_cast<int>(M.rows());

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, true);
    if (es.info() != Eigen::Success)
        throw NonConvergence("eigensolver failed on M");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> esa(M.adjoint(), true);
    if (esa.info() != Eigen::Success)
        throw NonConvergence("eigensolver failed on adjoint(M)");

    // Deterministic order: by (Re, Im) of the eigenvalue.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex la = es.eigenvalues()[a], lb = es.eigenvalues()[b];
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.right_vectors.resize(n, n);
    out.left_vectors.resize(n, n);
    out.condition_flags.assign(n, false);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = es.eigenvalues()[order[k]];
        out.right_vectors.col(k) = es.eigenvectors().col(order[k]).normalized();
    }

    const std::vector<int> lmap =
        match_conjugate_pairs(out.eigenvalues, esa.eigenvalues());
    for (int k = 0; k < n; ++k)
        out.left_vectors.col(k) = esa.eigenvectors().col(lmap[k]).normalized();

    const double scale = M.norm();
    for (int k = 0; k < n; ++k) {
        const double res_r =
            (M * out.right_vectors.col(k) - out.eigenvalues[k] * out.right_vectors.col(k)).norm();
        const double res_l =
            (M.adjoint() * out.left_vectors.col(k) -
             std::conj(out.eigenvalues[k]) * out.left_vectors.col(k)).norm();
        if (res_r > tol * scale || res_l > tol * scale)
            throw NonConvergence("eigenpair residual above tolerance");
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double ov = std::abs(out.right_vectors.col(i).dot(out.right_vectors.col(j)));
            if (ov > 0.99) {
                out.condition_flags[i] = true;
                out.condition_flags[j] = true;
            }
        }
    return out;
}

Eigen::VectorXcd expm_action(const Eigen::Ref<const Eigen::MatrixXcd>& M,
                             double t,
                             const Eigen::Ref<const Eigen::VectorXcd>& v) {
    check_square_small(M);
    if (v.size() != M.rows())
        throw DomainError("vector dimension does not match matrix");
    const Eigen::MatrixXcd A = (Complex(0.0, -t) * M).exp();
    Eigen::VectorXcd out = A * v;
    if (!out.allFinite())
        throw NonConvergence("matrix exponential produced non-finite values");
    return out;
}

Propagator::Propagator(const Eigen::Ref<const Eigen::MatrixXcd>& M) : m_(M) {
    check_square_small(M);
    try {
        SpectralDecomposition d = eig_general(M);
        if (!d.any_flagged()) {
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(d.right_vectors);
            if (lu.isInvertible()) {
                Eigen::MatrixXcd inv = lu.inverse();
                const double recon =
                    (d.right_vectors * inv - Eigen::MatrixXcd::Identity(M.rows(), M.rows()))
                        .cwiseAbs()
                        .maxCoeff();
                if (recon < 1e-8) {
                    vecs_ = d.right_vectors;
                    vecs_inv_ = std::move(inv);
                    vals_ = d.eigenvalues;
                    spectral_ok_ = true;
                }
            }
        }
    } catch (const NonConvergence&) {
        // fall through to the Pade route
    }
}

Eigen::VectorXcd Propagator::apply(double t,
                                   const Eigen::Ref<const Eigen::VectorXcd>& v) const {
    if (v.size() != m_.rows())
        throw DomainError("vector dimension does not match matrix");
    if (!spectral_ok_)
        return expm_action(m_, t, v);
    Eigen::VectorXcd c = vecs_inv_ * v;
    for (int k = 0; k < c.size(); ++k)
        c[k] *= std::exp(Complex(0.0, -t) * vals_[k]);
    return vecs_ * c;
}

Mat2 partial_trace(const Mat4& rho, int keep) {
    if (keep != 1 && keep != 2)
        throw DomainError("keep must be qubit index 1 or 2");
    Mat2 out = Mat2::Zero();
    if (keep == 1) {
        // trace over qubit 2: block structure [q1 x q2]
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
    } else {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out(a, b) = rho(a, b) + rho(a + 2, b + 2);
    }
    return out;
}

}  // namespace epq
