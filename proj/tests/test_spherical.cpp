#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fueter/spherical.hpp"
#include "test_util.hpp"

using namespace fueter;
using testutil::qdist;

TEST_CASE("to_spherical on axis cases") {
    const SphericalPoint a = to_spherical(Quaternion{1, 2, 0, 0});
    CHECK(a.t == 1.0);
    CHECK(a.r == 2.0);
    CHECK(a.alpha == 0.0);
    CHECK(a.beta == Catch::Approx(0.5 * pi));
    CHECK_FALSE(a.degenerate);

    CHECK(qdist(from_spherical({0.0, 1.0, 0.5 * pi, 0.5 * pi, false}), q_j) < 1e-15);

    // pole convention: alpha := 0, flagged degenerate
    const SphericalPoint c = to_spherical(Quaternion{3, 0, 0, 4});
    CHECK(c.t == 3.0);
    CHECK(c.r == 4.0);
    CHECK(c.alpha == 0.0);
    CHECK(c.beta == 0.0);
    CHECK(c.degenerate);

    CHECK_THROWS_AS(to_spherical(Quaternion{5.0}), std::domain_error);
}

TEST_CASE("round trip on the non-degenerate domain") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Quaternion q = testutil::random_quaternion(rng);
        const double rho = std::hypot(q.x, q.y);
        if (rho < 1e-6 || q.norm() < 1e-6) continue;
        const Quaternion back = from_spherical(to_spherical(q));
        CHECK(qdist(back, q) <= 1e-12 * q.norm());
    }
}

TEST_CASE("iota from Cartesian agrees with the angular parametrization") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        const Quaternion q = testutil::random_quaternion(rng);
        if (std::hypot(q.x, q.y) < 1e-3) continue;
        const SphericalPoint p = to_spherical(q);
        CHECK(qdist(iota_from_cartesian(q.x, q.y, q.z), iota_at(p.alpha, p.beta)) < 1e-13);
    }
}

TEST_CASE("frame at the equator") {
    const Frame f = frame_at(0.0, 0.5 * pi);
    CHECK(qdist(f.iota, q_i) < 1e-15);
    CHECK(qdist(f.iota_alpha, q_j) < 1e-15);
    CHECK(qdist(f.iota_beta, -q_k) < 1e-15);
    CHECK(qdist(f.inv_iota_alpha, -q_j) < 1e-15);
    CHECK(qdist(f.inv_iota_beta, q_k) < 1e-15);

    const Frame g = frame_at(0.5 * pi, 0.5 * pi);
    CHECK(qdist(g.iota, q_j) < 1e-15);
    CHECK(qdist(g.iota_alpha, -q_i) < 1e-15);

    CHECK_THROWS_AS(frame_at(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(frame_at(1.0, pi), std::domain_error);
}

TEST_CASE("frame algebra at random angles") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const double alpha = two_pi * uniform01(rng);
        const double beta = 0.2 + (pi - 0.4) * uniform01(rng);
        const Frame f = frame_at(alpha, beta);

        CHECK(qdist(f.iota * f.iota, Quaternion{-1.0}) < 1e-15);
        CHECK(qdist(f.iota_alpha * f.inv_iota_alpha, Quaternion{1.0}) < 1e-12);
        CHECK(qdist(f.iota_beta * f.inv_iota_beta, Quaternion{1.0}) < 1e-12);

        // iota_alpha and iota_beta anticommute
        CHECK((f.iota_alpha * f.iota_beta + f.iota_beta * f.iota_alpha).norm() < 1e-15);

        // inverse-frame squares
        const double sb = std::sin(beta);
        CHECK(qdist(f.inv_iota_beta * f.inv_iota_beta, Quaternion{-1.0}) < 1e-12);
        CHECK(qdist(f.inv_iota_alpha * f.inv_iota_alpha, Quaternion{-1.0 / (sb * sb)}) <
              1e-12 / (sb * sb));
    }
}

TEST_CASE("closed-form frame derivatives match finite differences") {
    std::mt19937_64 rng(14);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const double alpha = two_pi * uniform01(rng);
        const double beta = 0.3 + (pi - 0.6) * uniform01(rng);
        const Frame fm = frame_at(alpha - h, beta), fp = frame_at(alpha + h, beta);
        const Frame gm = frame_at(alpha, beta - h), gp = frame_at(alpha, beta + h);
        const FrameDerivs d = frame_derivs_at(alpha, beta);
        CHECK(qdist((fp.inv_iota_alpha - fm.inv_iota_alpha) / (2 * h), d.d_inv_alpha_dalpha) < 1e-8);
        CHECK(qdist((gp.inv_iota_alpha - gm.inv_iota_alpha) / (2 * h), d.d_inv_alpha_dbeta) < 1e-7);
        CHECK(qdist((fp.inv_iota_beta - fm.inv_iota_beta) / (2 * h), d.d_inv_beta_dalpha) < 1e-8);
        CHECK(qdist((gp.inv_iota_beta - gm.inv_iota_beta) / (2 * h), d.d_inv_beta_dbeta) < 1e-8);
    }
}
