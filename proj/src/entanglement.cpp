#include "epq/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace epq {

namespace {

constexpr double kHermTol = 1e-8;
constexpr double kNegEigTol = -1e-10;

const Mat4& spin_flip() {
    // (sigma_y (x) sigma_y) with sigma_y in the {|f>,|e>} basis; real here.
    static const Mat4 f = [] {
        Mat4 m = Mat4::Zero();
        m(kFF, kEE) = -1.0;
        m(kFE, kEF) = 1.0;
        m(kEF, kFE) = 1.0;
        m(kEE, kFF) = -1.0;
        return m;
    }();
    return f;
}

Mat4 checked_normalized(const Mat4& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw NotADensityMatrix("density matrix is not Hermitian");
    const double tr = rho.trace().real();
    if (!(tr > 0.0))
        throw NotADensityMatrix("density matrix has non-positive trace");
    return rho / tr;
}

// Hermitian square root with eigenvalue clamping at zero.
Mat4 herm_sqrt(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d w = es.eigenvalues();
    for (int k = 0; k < 4; ++k) {
        if (w[k] < kNegEigTol)
            throw NotADensityMatrix("matrix is not positive semidefinite");
        w[k] = std::sqrt(std::max(w[k], 0.0));
    }
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double wootters_from_taus(Eigen::Vector4d tau) {
    std::sort(tau.data(), tau.data() + 4, std::greater<double>());
    return std::max(0.0, tau[0] - tau[1] - tau[2] - tau[3]);
}

}  // namespace

const std::array<Vec4, 4>& bell_basis() {
    static const std::array<Vec4, 4> basis = [] {
        const double s = 1.0 / std::sqrt(2.0);
        std::array<Vec4, 4> b;
        b[0] << s, 0, 0, s;
        b[1] << kI * s, 0, 0, -kI * s;
        b[2] << 0, kI * s, kI * s, 0;
        b[3] << 0, s, -s, 0;
        return b;
    }();
    return basis;
}

double concurrence_pure(const Vec4& psi) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0)
        throw ZeroState("concurrence of the zero vector is undefined");
    return 2.0 * std::abs(psi[kFF] * psi[kEE] - psi[kFE] * psi[kEF]) / n2;
}

std::array<Complex, 4> bell_projection(const Vec4& psi) {
    if (psi.squaredNorm() <= 0.0)
        throw ZeroState("projection of the zero vector is undefined");
    const auto& b = bell_basis();
    return {b[0].dot(psi), b[1].dot(psi), b[2].dot(psi), b[3].dot(psi)};
}

// Eigenvalues of the tau matrices sit in [0, 1] after trace normalization;
// values at roundoff level would contribute sqrt(eps) ~ 1e-8 spurious tau's,
// so anything below this floor counts as an exact zero.
constexpr double kTauFloor = 1e-14;

double concurrence_mixed(const Mat4& rho) {
    const Mat4 r = checked_normalized(rho);
    const Mat4 rt = spin_flip() * r.conjugate() * spin_flip();
    const Mat4 sq = herm_sqrt(r);
    // R^2 = sqrt(rho) rho~ sqrt(rho) is Hermitian PSD; its eigenvalue square
    // roots are the tau_i.
    Mat4 r2 = sq * rt * sq;
    r2 = 0.5 * (r2 + r2.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Mat4> es(r2);
    Eigen::Vector4d tau;
    for (int k = 0; k < 4; ++k) {
        const double w = es.eigenvalues()[k];
        tau[k] = w > kTauFloor ? std::sqrt(w) : 0.0;
    }
    return wootters_from_taus(tau);
}

double concurrence_mixed_product_route(const Mat4& rho) {
    const Mat4 r = checked_normalized(rho);
    const Mat4 rt = spin_flip() * r.conjugate() * spin_flip();
    Eigen::ComplexEigenSolver<Mat4> es(r * rt, false);
    if (es.info() != Eigen::Success)
        throw NonConvergence("eigensolver failed on rho * rho~");
    Eigen::Vector4d tau;
    for (int k = 0; k < 4; ++k) {
        const double w = es.eigenvalues()[k].real();
        tau[k] = w > kTauFloor ? std::sqrt(w) : 0.0;
    }
    return wootters_from_taus(tau);
}

}  // namespace epq
