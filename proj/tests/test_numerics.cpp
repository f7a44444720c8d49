#include "epq/numerics.hpp"

#include <doctest.h>

#include "epq/model.hpp"
#include "oracles.hpp"

using namespace epq;

TEST_SUITE("numerics") {

TEST_CASE("identity matrix has unit eigenvalues") {
    const auto d = eig_general(Eigen::MatrixXcd::Identity(4, 4));
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(d.eigenvalues[k] - 1.0) < 1e-14);
        CHECK(std::abs(d.right_vectors.col(k).norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("diagonal matrix returns the diagonal, sorted") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = Complex(1.0, 2.0);
    m(1, 1) = 3.0;
    m(2, 2) = Complex(0.0, -1.0);
    m(3, 3) = 0.0;
    const auto d = eig_general(m);
    CHECK(std::abs(d.eigenvalues[0] - Complex(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(d.eigenvalues[1] - Complex(0.0, 0.0)) < 1e-14);
    CHECK(std::abs(d.eigenvalues[2] - Complex(1.0, 2.0)) < 1e-14);
    CHECK(std::abs(d.eigenvalues[3] - Complex(3.0, 0.0)) < 1e-14);
}

TEST_CASE("driven lossy qubit eigenvalues match the closed form") {
    // (-i gamma +- eta)/4 with eta = sqrt(16 Omega^2 - gamma^2)
    const Mat2 h = single_qubit_hamiltonian({0.0, 6.0, 1.6});
    const double eta = std::sqrt(4.96);
    const auto d = eig_general(h);
    CHECK(std::abs(d.eigenvalues[0] - Complex(-eta / 4.0, -1.5)) < 1e-12);
    CHECK(std::abs(d.eigenvalues[1] - Complex(eta / 4.0, -1.5)) < 1e-12);
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(eig_general(Eigen::MatrixXcd::Identity(5, 5)),
                    DimensionTooLarge);
    CHECK_THROWS_AS(eig_general(Eigen::MatrixXcd::Zero(4, 3)), DomainError);
}

TEST_CASE("random matrices: residuals, left pairing, biorthogonality") {
    testing::Rng rng(20240517);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat4 m = rng.mat4();
        const auto d = eig_general(m, 1e-10);
        const double scale = m.norm();
        double min_gap = 1e300;
        for (int i = 0; i < 4; ++i) {
            CHECK((m * d.right_vectors.col(i) - d.eigenvalues[i] * d.right_vectors.col(i))
                      .norm() <= 1e-10 * scale);
            CHECK((m.adjoint() * d.left_vectors.col(i) -
                   std::conj(d.eigenvalues[i]) * d.left_vectors.col(i))
                      .norm() <= 1e-10 * scale);
            for (int j = i + 1; j < 4; ++j)
                min_gap = std::min(min_gap, std::abs(d.eigenvalues[i] - d.eigenvalues[j]));
        }
        if (min_gap > 1e-6) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    CHECK(std::abs(d.left_vectors.col(i).dot(d.right_vectors.col(j))) <=
                          1e-8);
                }
        }
    }
}

TEST_CASE("expm_action trivial generators") {
    const Vec4 v = (Vec4() << 1.0, kI, -2.0, 0.5 * kI).finished();
    SUBCASE("zero generator") {
        const Eigen::VectorXcd out = expm_action(Mat4::Zero(), 3.7, v);
        CHECK((out - v).norm() < 1e-15);
    }
    SUBCASE("diagonal generator applies phases") {
        Mat4 m = Mat4::Zero();
        m(0, 0) = 1.25;
        m(1, 1) = Complex(0.0, -0.5);
        const double t = 2.0;
        const Eigen::VectorXcd out = expm_action(m, t, v);
        CHECK(std::abs(out[0] - v[0] * std::exp(-kI * 1.25 * t)) < 1e-13);
        CHECK(std::abs(out[1] - v[1] * std::exp(-kI * Complex(0.0, -0.5) * t)) < 1e-13);
        CHECK(std::abs(out[2] - v[2] * 1.0) < 1e-13);
    }
}

TEST_CASE("expm_action against the RK4 integration oracle") {
    SystemParams s;
    s.qubit1 = {0.0, 6.0, 1.6};
    s.qubit2 = {0.0, 6.0, 1.6};
    s.coupling = 1e-3;
    const Mat4 h = coupled_hamiltonian(s);
    Vec4 ff = Vec4::Zero();
    ff[0] = 1.0;

    const Eigen::VectorXcd got = expm_action(h, 5.325, ff);
    const Vec4 want = testing::rk4_schrodinger(h, ff, 5.325, 1e-4);
    CHECK((got - want).norm() < 1e-8);

    // normalized amplitudes frozen from an independent integration
    const Vec4 norm = got.normalized();
    const Vec4 frozen = (Vec4() << Complex(0.3536946499261176, 0.3559368253338850),
                         Complex(0.3497263248990075, 0.3573295422610471),
                         Complex(0.3497263248990075, 0.3573295422610471),
                         Complex(-0.3483723101369426, -0.3561741095517962))
                            .finished();
    CHECK((norm - frozen).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("expm_action composes over time splits") {
    testing::Rng rng(77);
    const Vec4 v0 = rng.vec4();
    for (int trial = 0; trial < 50; ++trial) {
        const Mat4 m = rng.mat4();
        const double t1 = rng.uniform(0.0, 1.5), t2 = rng.uniform(0.0, 1.5);
        const Eigen::VectorXcd whole = expm_action(m, t1 + t2, v0);
        const Eigen::VectorXcd chained = expm_action(m, t2, expm_action(m, t1, v0));
        CHECK((whole - chained).norm() <= 1e-9 * std::max(1.0, whole.norm()));
    }
}

TEST_CASE("propagator falls back near a defective point") {
    SystemParams s;
    s.qubit1 = {0.0, 6.0, 1.5};
    s.qubit2 = {0.0, 6.0, 1.5};
    s.coupling = 0.0;
    const Mat4 h = coupled_hamiltonian(s);  // fourth-order EP: defective
    const Propagator p(h);
    CHECK(!p.spectral_path());
    Vec4 ff = Vec4::Zero();
    ff[0] = 1.0;
    const Eigen::VectorXcd a = p.apply(2.0, ff);
    const Eigen::VectorXcd b = expm_action(h, 2.0, ff);
    CHECK((a - b).norm() < 1e-12);
}

TEST_CASE("propagator spectral path matches the exponential") {
    testing::Rng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat4 m = rng.mat4();
        const Propagator p(m);
        const Vec4 v = rng.vec4();
        const Eigen::VectorXcd a = p.apply(0.8, v);
        const Eigen::VectorXcd b = expm_action(m, 0.8, v);
        CHECK((a - b).norm() < 1e-9 * std::max(1.0, b.norm()));
    }
}

TEST_CASE("partial trace") {
    Vec4 ff = Vec4::Zero();
    ff[0] = 1.0;
    SUBCASE("product basis state reduces to a pure qubit") {
        const Mat4 rho = ff * ff.adjoint();
        for (int keep : {1, 2}) {
            const Mat2 red = partial_trace(rho, keep);
            CHECK(std::abs(red(0, 0) - 1.0) < 1e-15);
            CHECK(std::abs(red.trace() - 1.0) < 1e-15);
        }
    }
    SUBCASE("maximally entangled state reduces to I/2") {
        Vec4 bell = Vec4::Zero();
        bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
        const Mat4 rho = bell * bell.adjoint();
        for (int keep : {1, 2}) {
            const Mat2 red = partial_trace(rho, keep);
            CHECK((red - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    SUBCASE("random product state reduces to the factors") {
        testing::Rng rng(555);
        for (int trial = 0; trial < 100; ++trial) {
            Vec2 v, w;
            v << rng.complex_uniform(), rng.complex_uniform();
            w << rng.complex_uniform(), rng.complex_uniform();
            v.normalize();
            w.normalize();
            Vec4 prod;
            prod << v[0] * w[0], v[0] * w[1], v[1] * w[0], v[1] * w[1];
            const Mat4 rho = prod * prod.adjoint();
            CHECK((partial_trace(rho, 1) - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((partial_trace(rho, 2) - w * w.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("linearity and trace preservation") {
        testing::Rng rng(556);
        const Mat4 a = rng.mat4(), b = rng.mat4();
        const Complex c = rng.complex_uniform();
        const Mat2 lhs = partial_trace((a + c * b).eval(), 1);
        const Mat2 rhs = partial_trace(a, 1) + c * partial_trace(b, 1);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(std::abs(partial_trace(a, 2).trace() - a.trace()) < 1e-12);
    }
    SUBCASE("keep index validated") {
        CHECK_THROWS_AS(partial_trace(Mat4::Identity(), 3), DomainError);
    }
}

}  // TEST_SUITE
