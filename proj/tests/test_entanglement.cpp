#include "epq/entanglement.hpp"

#include <cmath>

#include <doctest.h>

#include "oracles.hpp"

using namespace epq;

namespace {
Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}
}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("pure concurrence basics") {
    Vec4 ff = Vec4::Zero();
    ff[kFF] = 1.0;
    CHECK(concurrence_pure(ff) == 0.0);

    Vec4 even;
    even << 0.5, 0.5, 0.5, -0.5;
    CHECK(concurrence_pure(even) == doctest::Approx(1.0).epsilon(1e-14));

    // (cos t)|fe> - i (sin t)|ef|  ->  |sin 2t|
    for (double th = 0.0; th < 1.6; th += 0.1) {
        Vec4 v = Vec4::Zero();
        v[kFE] = std::cos(th);
        v[kEF] = -kI * std::sin(th);
        CHECK(concurrence_pure(v) ==
              doctest::Approx(std::abs(std::sin(2.0 * th))).epsilon(1e-13));
    }
}

TEST_CASE("pure concurrence is phase and scale invariant") {
    testing::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec4 psi = rng.vec4();
        const double c = concurrence_pure(psi);
        CHECK(concurrence_pure((std::exp(kI * rng.uniform()) * psi).eval()) ==
              doctest::Approx(c).epsilon(1e-13));
        CHECK(concurrence_pure((2.75 * psi).eval()) == doctest::Approx(c).epsilon(1e-13));
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(concurrence_pure(Vec4::Zero()), ZeroState);
}

TEST_CASE("projection onto the entangled basis") {
    SUBCASE("first basis state projects onto itself") {
        const auto c = bell_projection(bell_basis()[0]);
        CHECK(std::abs(c[0] - 1.0) < 1e-15);
        for (int k = 1; k < 4; ++k) CHECK(std::abs(c[k]) < 1e-15);
    }
    SUBCASE("|ff> coefficients cancel in the square sum") {
        Vec4 ff = Vec4::Zero();
        ff[kFF] = 1.0;
        const auto c = bell_projection(ff);
        CHECK(std::abs(c[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(c[1] - (-kI / std::sqrt(2.0))) < 1e-15);
        const Complex sum = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
        CHECK(std::abs(sum) < 1e-15);
    }
    SUBCASE("square-sum identity reproduces the concurrence") {
        testing::Rng rng(32);
        for (int trial = 0; trial < 1000; ++trial) {
            const Vec4 psi = rng.vec4();
            const auto c = bell_projection(psi);
            const Complex sum = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
            CHECK(std::abs(std::abs(sum) / psi.squaredNorm() - concurrence_pure(psi)) <
                  1e-12);
        }
    }
}

TEST_CASE("mixed concurrence on reference states") {
    SUBCASE("maximally entangled projector") {
        const Vec4& e1 = bell_basis()[0];
        CHECK(concurrence_mixed((e1 * e1.adjoint()).eval()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("maximally mixed state") {
        CHECK(concurrence_mixed((0.25 * Mat4::Identity()).eval()) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("isotropic mixture has a known threshold") {
        const Vec4& e1 = bell_basis()[0];
        for (double p = 0.0; p <= 1.0; p += 0.125) {
            const Mat4 rho = p * (e1 * e1.adjoint()) + (1.0 - p) * 0.25 * Mat4::Identity();
            const double want = std::max(0.0, (3.0 * p - 1.0) / 2.0);
            CHECK(concurrence_mixed(rho) == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("mixed concurrence agrees with the pure formula on projectors") {
    testing::Rng rng(33);
    for (int trial = 0; trial < 1000; ++trial) {
        Vec4 psi = rng.vec4();
        psi.normalize();
        const Mat4 rho = psi * psi.adjoint();
        CHECK(std::abs(concurrence_mixed(rho) - concurrence_pure(psi)) < 1e-10);
    }
}

TEST_CASE("the two Wootters routes agree") {
    testing::Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        // random mixture of two projectors
        Vec4 a = rng.vec4(), b = rng.vec4();
        a.normalize();
        b.normalize();
        const double p = 0.5 * (rng.uniform() + 1.0);
        const Mat4 rho = p * (a * a.adjoint()) + (1.0 - p) * (b * b.adjoint());
        CHECK(std::abs(concurrence_mixed(rho) - concurrence_mixed_product_route(rho)) <
              1e-10);
    }
}

TEST_CASE("local unitaries leave the concurrence unchanged") {
    testing::Rng rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        Vec4 a = rng.vec4(), b = rng.vec4();
        a.normalize();
        b.normalize();
        const Mat4 rho = 0.6 * (a * a.adjoint()) + 0.4 * (b * b.adjoint());
        const Mat4 u = kron2(rng.unitary2(), rng.unitary2());
        const Mat4 rotated = u * rho * u.adjoint();
        CHECK(std::abs(concurrence_mixed(rho) - concurrence_mixed(rotated)) < 1e-10);
    }
}

TEST_CASE("density-matrix validation") {
    Mat4 bad = Mat4::Zero();
    bad(0, 1) = 1.0;  // not Hermitian
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(concurrence_mixed(bad), NotADensityMatrix);

    Mat4 indefinite = Mat4::Identity();
    indefinite(3, 3) = -0.5;
    CHECK_THROWS_AS(concurrence_mixed(indefinite), NotADensityMatrix);
}

}  // TEST_SUITE
