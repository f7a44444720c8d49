#include "epq/lindblad.hpp"

#include <cmath>

#include "epq/entanglement.hpp"

namespace epq {

namespace {

struct Generator {
    Mat4 h;
    Mat4 jump1, jump2;  // |e><f| on qubit 1 / 2
    double gf1 = 0.0, gf2 = 0.0;

    explicit Generator(const LindbladParams& p)
        : h(coupled_hamiltonian(p.system)), gf1(p.gamma_f1), gf2(p.gamma_f2) {
        Mat2 lower = Mat2::Zero();
        lower(1, 0) = 1.0;  // |e><f| in the {|f>,|e>} basis
        jump1 = Mat4::Zero();
        jump2 = Mat4::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    jump1(2 * a + c, 2 * b + c) += lower(a, b);
                    jump2(c * 2 + a, c * 2 + b) += lower(a, b);
                }
    }

    Mat4 rhs(const Mat4& rho) const {
        Mat4 out = -kI * (h * rho - rho * h.adjoint());
        for (const auto& [L, g] : {std::pair{&jump1, gf1}, std::pair{&jump2, gf2}}) {
            if (g == 0.0) continue;
            const Mat4 num = (*L) * rho * L->adjoint();
            const Mat4 anti = L->adjoint() * (*L) * rho + rho * L->adjoint() * (*L);
            out += g * (num - 0.5 * anti);
        }
        return out;
    }
};

void validate_params(const LindbladParams& p) {
    validate(p.system);
    if (p.gamma_f1 < 0.0 || p.gamma_f2 < 0.0)
        throw DomainError("gamma_f must be >= 0");
    if (p.dt <= 0.0 || p.t_max <= 0.0)
        throw DomainError("dt and t_max must be > 0");
}

// The drift scales the whole state down by e^{-gamma t}-type factors, so by
// late times the normalized rho sits on top of integrator noise and its
// spectrum can undershoot zero slightly.  Violations inside the tolerance
// are projected back onto the density-matrix cone before the concurrence is
// evaluated; anything worse throws.
double clamped_concurrence(const Mat4& rho, double positivity_tol) {
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw NumericError("master-equation state lost its trace");
    const Mat4 norm = rho / tr;
    Eigen::SelfAdjointEigenSolver<Mat4> es(norm);
    if (es.eigenvalues().minCoeff() < -positivity_tol)
        throw NumericError("master-equation state lost positivity (min eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()) + ")");
    Eigen::Vector4d w = es.eigenvalues().cwiseMax(0.0);
    w /= w.sum();
    const Mat4 psd =
        es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return concurrence_mixed(psd);
}

constexpr double kStrictPositivity = 1e-8;

std::vector<MasterSample> run(const Mat4& rho0, const LindbladParams& p,
                              int store_stride, double positivity_tol) {
    const Generator gen(p);
    const int steps = static_cast<int>(std::llround(p.t_max / p.dt));
    std::vector<MasterSample> out;
    out.reserve(steps / store_stride + 2);

    Mat4 rho = rho0;
    for (int k = 0; k <= steps; ++k) {
        const double t = k * p.dt;
        if (k % store_stride == 0 || k == steps) {
            MasterSample s;
            s.t = t;
            s.rho = rho;
            s.trace = rho.trace().real();
            s.concurrence = clamped_concurrence(rho, positivity_tol);
            out.push_back(std::move(s));
        }
        if (k == steps) break;
        const Mat4 k1 = gen.rhs(rho);
        const Mat4 k2 = gen.rhs(rho + 0.5 * p.dt * k1);
        const Mat4 k3 = gen.rhs(rho + 0.5 * p.dt * k2);
        const Mat4 k4 = gen.rhs(rho + p.dt * k3);
        rho += p.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval());
    }
    return out;
}

}  // namespace

Mat4 master_rhs(const Mat4& rho, const LindbladParams& p) {
    validate_params(p);
    return Generator(p).rhs(rho);
}

std::vector<MasterSample> integrate_master(const Mat4& rho0,
                                           const LindbladParams& p,
                                           int store_stride,
                                           bool verify_step) {
    validate_params(p);
    if (store_stride < 1) throw DomainError("store_stride must be >= 1");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw NotADensityMatrix("initial state is not Hermitian");

    if (!verify_step) return run(rho0, p, store_stride, kStrictPositivity);

    // Judge the step size before holding the trajectory to the strict
    // positivity budget: a too-coarse run manifests first as spectrum noise.
    constexpr double kLooseTol = 1e-2;
    LindbladParams half = p;
    half.dt = 0.5 * p.dt;
    const std::vector<MasterSample> fine = run(rho0, half, 2 * store_stride, kLooseTol);
    std::vector<MasterSample> coarse;
    try {
        coarse = run(rho0, p, store_stride, kLooseTol);
    } catch (const NumericError&) {
        throw StepSizeTooLarge("the state degenerates at this step size");
    }
    const size_t n = std::min(coarse.size(), fine.size());
    for (size_t k = 0; k < n; ++k) {
        if (std::abs(coarse[k].concurrence - fine[k].concurrence) >= 1e-6)
            throw StepSizeTooLarge(
                "halving dt moves the concurrence by >= 1e-6 at t = " +
                std::to_string(coarse[k].t));
    }
    for (const MasterSample& s : coarse) {
        Eigen::SelfAdjointEigenSolver<Mat4> es(Mat4(s.rho / s.trace));
        if (es.eigenvalues().minCoeff() < -kStrictPositivity)
            throw NumericError("master-equation state lost positivity");
    }
    return coarse;
}

}  // namespace epq
