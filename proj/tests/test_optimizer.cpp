#include "epq/optimizer.hpp"

#include <cmath>

#include <doctest.h>

#include "epq/dynamics.hpp"

using namespace epq;

TEST_SUITE("optimizer") {

TEST_CASE("hermitian baseline") {
    SUBCASE("driven pair from |ff>: the swap-phase closed form sets the scale") {
        const double j = 1e-3;
        const double t = hermitian_baseline(j, basis_state(kFF), 1.6);
        // C = |sin(tJ/2)| crosses 0.999 slightly before pi/J
        CHECK(t == doctest::Approx(3052.0).epsilon(2e-3));
        CHECK(std::abs(t / (M_PI / j) - 1.0) < 0.05);
    }
    SUBCASE("undriven pair from |fe>: plain excitation swap") {
        const double j = 1e-3;
        const double t = hermitian_baseline(j, basis_state(kFE), 0.0);
        // C = |sin(2Jt)| reaches 0.999 just before pi/(4J)
        CHECK(t <= M_PI / (4.0 * j));
        CHECK(t / (M_PI / (4.0 * j)) > 0.97);
    }
    SUBCASE("strong coupling from |fe>: about eight microseconds") {
        const double t = hermitian_baseline(0.1, basis_state(kFE), 0.0);
        CHECK(t > 7.0);
        CHECK(t < 8.0);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(hermitian_baseline(0.0, basis_state(kFF), 1.6), DomainError);
    }
}

TEST_CASE("concurrence map") {
    SUBCASE("locates the working optimum on a small window") {
        const ConcurrenceGrid g =
            concurrence_map(1e-3, 6.0, 1.55, 1.65, 0.0, 6.0, 41, 240);
        CHECK(g.c_max >= 0.99);
        CHECK(std::abs(g.omega_star - 1.6) < 0.02);
        CHECK(std::abs(g.t_star - 5.325) < 0.05);
    }
    SUBCASE("decoupled system never entangles anywhere on the grid") {
        const ConcurrenceGrid g =
            concurrence_map(0.0, 6.0, 1.55, 1.65, 0.0, 6.0, 11, 40);
        CHECK(g.c_max <= 1e-10);
    }
    SUBCASE("halving the grid spacing barely moves the optimum") {
        const ConcurrenceGrid coarse =
            concurrence_map(1e-3, 6.0, 1.5, 1.8, 0.0, 8.0, 76, 200);
        const ConcurrenceGrid fine =
            concurrence_map(1e-3, 6.0, 1.5, 1.8, 0.0, 8.0, 151, 400);
        CHECK(std::abs(coarse.omega_star - fine.omega_star) <=
              (1.8 - 1.5) / 75.0);
        CHECK(std::abs(coarse.t_star - fine.t_star) <= 8.0 / 199.0);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(concurrence_map(1e-3, 6.0, 1.8, 1.5, 0.0, 8.0, 10, 10),
                        DomainError);
        CHECK_THROWS_AS(concurrence_map(1e-3, 6.0, 1.5, 1.8, 0.0, 8.0, 1, 10),
                        DomainError);
    }
}

TEST_CASE("per-coupling optimum") {
    SUBCASE("weak coupling reproduces the reference optimum") {
        const auto pts = optimal_vs_J(6.0, {1e-3});
        REQUIRE(pts.size() == 1);
        CHECK(std::abs(pts[0].omega_star - 1.6) < 0.02);
        CHECK(std::abs(pts[0].t_star - 5.325) < 0.06);
        CHECK(pts[0].c_max >= 0.99);
        CHECK(pts[0].factor == doctest::Approx(573.0).epsilon(0.12));
    }
    SUBCASE("strong coupling entangles below two microseconds near 2.2") {
        const auto pts = optimal_vs_J(6.0, {0.1});
        REQUIRE(pts.size() == 1);
        CHECK(std::abs(pts[0].omega_star - 2.2) < 0.15);
        CHECK(pts[0].t_star < 2.0);
        CHECK(pts[0].c_max >= 0.99);
    }
    SUBCASE("trends across two decades of coupling") {
        // weaker coupling pulls the optimal drive toward the coalescence and
        // stretches the build-up time; the speedup over the Hermitian
        // reference grows the whole way
        const auto pts =
            optimal_vs_J(6.0, {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1});
        REQUIRE(pts.size() == 7);
        for (size_t k = 0; k < pts.size(); ++k) {
            CHECK(pts[k].c_max >= 0.99);
            if (k == 0) continue;
            CHECK(pts[k].omega_star > pts[k - 1].omega_star);
            CHECK(pts[k].t_star < pts[k - 1].t_star);
            CHECK(pts[k].factor < pts[k - 1].factor);
        }
        CHECK(pts.front().omega_star > 1.5);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(optimal_vs_J(6.0, {}), DomainError);
        CHECK_THROWS_AS(optimal_vs_J(6.0, {0.0}), DomainError);
    }
}

TEST_CASE("enhancement factors fall with coupling") {
    const EnhancementResult res = enhancement_factor(6.0, {1e-3, 1e-2, 1e-1});
    REQUIRE(res.points.size() == 3);
    for (size_t k = 1; k < res.points.size(); ++k)
        CHECK(res.points[k].factor <= res.points[k - 1].factor);
    CHECK(res.points[0].factor > 100.0);
    CHECK(res.points[2].factor > 1.0);
    // log-log slope is negative (reported as a diagnostic, not asserted
    // against a literature value)
    CHECK(res.fit.exponent < 0.0);
}

}  // TEST_SUITE
