#pragma once

#include <vector>

#include "epq/types.hpp"

namespace epq {

/// Eigenvalues with right and left eigenvectors of a general complex matrix.
///
/// Right vectors are columns of `right_vectors`, unit Euclidean norm.
/// Left vectors are columns of `left_vectors`: unit-norm eigenvectors of the
/// adjoint matrix, paired so that left_vectors.col(k) belongs to the
/// conjugate of eigenvalues[k].  Inner products <w|v> = w.dot(v) therefore
/// carry the usual conjugation on the left factor.
struct SpectralDecomposition {
    Eigen::VectorXcd eigenvalues;  // sorted by (Re, Im)
    Eigen::MatrixXcd right_vectors;
    Eigen::MatrixXcd left_vectors;
    // Set for eigenpairs whose right vector overlaps another right vector
    // above 0.99 in modulus: the decomposition is close to defective there
    // and spectral propagation should not be trusted.
    std::vector<bool> condition_flags;

    bool any_flagged() const;
};

/// Dense eigendecomposition for dimensions <= 4.
///
/// Residual acceptance: ||M v - lambda v|| <= tol * ||M||_F for every pair
/// (and the adjoint analog for left vectors), otherwise NonConvergence.
SpectralDecomposition eig_general(const Eigen::Ref<const Eigen::MatrixXcd>& M,
                                  double tol = 1e-9);

/// e^{-i M t} v via Pade scaling-and-squaring of the full exponential.
/// Safe at and near defective parameter points.
Eigen::VectorXcd expm_action(const Eigen::Ref<const Eigen::MatrixXcd>& M,
                             double t,
                             const Eigen::Ref<const Eigen::VectorXcd>& v);

/// Repeated application of e^{-i M t} for a fixed generator.
///
/// Uses the spectral decomposition when it is well conditioned; near an
/// exceptional point (condition flags set, or the eigenvector matrix fails
/// a reconstruction check) every call falls back to the Pade route.
class Propagator {
  public:
    explicit Propagator(const Eigen::Ref<const Eigen::MatrixXcd>& M);

    Eigen::VectorXcd apply(double t, const Eigen::Ref<const Eigen::VectorXcd>& v) const;

    bool spectral_path() const { return spectral_ok_; }

  private:
    Eigen::MatrixXcd m_;
    Eigen::MatrixXcd vecs_;
    Eigen::MatrixXcd vecs_inv_;
    Eigen::VectorXcd vals_;
    bool spectral_ok_ = false;
};

/// Trace over one qubit of a two-qubit density matrix in the fixed
/// {|ff>,|fe>,|ef>,|ee>} ordering.  keep = 1 or 2.
Mat2 partial_trace(const Mat4& rho, int keep);

}  // namespace epq
