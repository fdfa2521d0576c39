#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fueter/operators.hpp"
#include "fueter/verify.hpp"
#include "test_util.hpp"

using namespace fueter;
using testutil::qdist;

namespace {

const DerivativeEngine kAnalytic{};

QuatField derived_field(std::function<Quaternion(const SphericalPoint&)> eval) {
    QuatField D;
    D.value = std::move(eval);
    D.partial = [val = D.value](const SphericalPoint& p, Var v, const DerivativeEngine&) {
        return quat_fd_partial(val, p, v, kOuterStep, true);
    };
    return D;
}

} // namespace

TEST_CASE("left Fueter operator on basic fields") {
    std::mt19937_64 rng(51);
    const QuatField idp = as_quat_field(fueter_map(power_seed(1)));
    const QuatField cst = as_quat_field(sf_const(3.25));
    const QuatField fx = as_quat_field(sf_coord_x());
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(fueter_left(idp, p, kAnalytic), Quaternion{-2.0}) < 1e-12);
        CHECK(qdist(fueter_left(cst, p, kAnalytic), Quaternion{}) < 1e-13);
        CHECK(qdist(fueter_left(fx, p, kAnalytic), q_i) < 1e-12);
    }
}

TEST_CASE("right operator equals left on scalars and differs on quaternion values") {
    std::mt19937_64 rng(52);
    const ScalarField xy = sf_product(sf_coord_x(), sf_coord_y());
    const QuatField fxy = as_quat_field(xy);
    // j * x: only the j component carries x
    const QuatField xj = quat_field_from_components(sf_zero(), sf_zero(), sf_coord_x(), sf_zero());
    const QuatField idp = as_quat_field(fueter_map(power_seed(1)));
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        const double x = p.r * std::cos(p.alpha) * std::sin(p.beta);
        const double y = p.r * std::sin(p.alpha) * std::sin(p.beta);
        const Quaternion expect = q_i * y + q_j * x;
        CHECK(qdist(fueter_left(fxy, p, kAnalytic), expect) < 1e-12);
        CHECK(qdist(fueter_right(fxy, p, kAnalytic), expect) < 1e-12);
        CHECK(qdist(fueter_right(idp, p, kAnalytic), Quaternion{-2.0}) < 1e-12);

        CHECK(qdist(fueter_left(xj, p, kAnalytic), q_k) < 1e-12);
        CHECK(qdist(fueter_right(xj, p, kAnalytic), -q_k) < 1e-12);
    }
}

TEST_CASE("conjugate operator") {
    std::mt19937_64 rng(53);
    // v/r of the squared field is 2t
    const ScalarField v_over_r = sf_scale(sf_coord_t(), 2.0);
    const QuatField g = as_quat_field(v_over_r);
    const QuatField cst = as_quat_field(sf_const(-1.5));
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(fueter_conj_left(g, p, kAnalytic), Quaternion{2.0}) < 1e-12);
        CHECK(qdist(fueter_conj_left(cst, p, kAnalytic), Quaternion{}) < 1e-13);
    }

    // conj(D_l) D_l x^2 = lap(x^2) = 2
    const ScalarField x2 = sf_product(sf_coord_x(), sf_coord_x());
    const QuatField X2 = as_quat_field(x2);
    const QuatField dx2 =
        derived_field([X2](const SphericalPoint& p) { return fueter_left(X2, p, kAnalytic); });
    for (int i = 0; i < 10; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(fueter_conj_left_spherical(dx2, p, kAnalytic), Quaternion{2.0}) < 1e-8);
    }
}

TEST_CASE("angular derivative") {
    std::mt19937_64 rng(54);
    const StructuredField sq = fueter_map(power_seed(2));
    const QuatField axial_v = as_quat_field(sq.v);          // scalar v(t, r)
    const QuatField iota_v = left_iota_product(axial_v);    // iota * v
    const QuatField fx = as_quat_field(sf_coord_x());
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(angular_derivative(axial_v, p, kAnalytic).norm() < 1e-13);
        CHECK(qdist(angular_derivative(iota_v, p, kAnalytic),
                    Quaternion{2.0 * sq.v.value(p)}) < 1e-12);
        (void)fx;
    }
    const SphericalPoint q{0.0, 1.0, 0.5 * pi, 0.5 * pi, false};
    CHECK(qdist(angular_derivative(fx, q, kAnalytic), -q_i) < 1e-13);
    CHECK_THROWS_AS(angular_derivative(fx, SphericalPoint{0, 1, 0, 0, true}, kAnalytic),
                    std::domain_error);
}

TEST_CASE("second angular derivative") {
    const ScalarField cst = sf_const(4.0);
    const ScalarField cosb = make_trig_field({TrigTerm{1.0, 0, 0.0, 1, 0.0}}); // cos(beta)
    const SphericalPoint p{0.0, 1.0, 0.0, 0.5 * pi, false};
    CHECK(angular_second(cst, p, kAnalytic).norm() < 1e-12);
    CHECK(qdist(angular_second(cosb, p, kAnalytic), -q_j) < 1e-9);

    // identity for arbitrary C^2 scalars, pointwise
    std::mt19937_64 rng(55);
    for (const ScalarField& v : random_trig_scalars(5, 99)) {
        for (int i = 0; i < 20; ++i) {
            const SphericalPoint q = testutil::random_point(rng);
            const Frame fr = frame_at(q.alpha, q.beta);
            const double sb = std::sin(q.beta), cb = std::cos(q.beta);
            const double vb = v.partial(q, Var::beta);
            const double vaa = second_partial(v, q, Var::alpha, Var::alpha, kAnalytic);
            const double vbb = second_partial(v, q, Var::beta, Var::beta, kAnalytic);
            const Quaternion rhs =
                -1.0 * (fr.iota * angular_derivative_scalar(v, q, kAnalytic)) -
                Quaternion{vaa / (sb * sb) + vbb + cb / sb * vb};
            CHECK(qdist(angular_second(v, q, kAnalytic), rhs) < 1e-9);
        }
    }
}

TEST_CASE("spherical form of the left operator") {
    std::mt19937_64 rng(56);
    const QuatField fx = as_quat_field(sf_coord_x());
    const QuatField idp = as_quat_field(fueter_map(power_seed(1)));
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(fueter_left_spherical(fx, p, kAnalytic), q_i) < 1e-12);
        CHECK(qdist(fueter_left_spherical(idp, p, kAnalytic), Quaternion{-2.0}) < 1e-12);
    }
}

TEST_CASE("numerical Laplacian on closed forms") {
    std::mt19937_64 rng(57);
    const QuatField sq = as_quat_field(fueter_map(power_seed(2)));
    const QuatField cu = as_quat_field(fueter_map(power_seed(3)));
    const ScalarField harm = sf_sum(sf_product(sf_coord_t(), sf_coord_t()),
                                    sf_scale(sf_product(sf_coord_x(), sf_coord_x()), -1.0));
    const QuatField fharm = as_quat_field(harm);
    for (int i = 0; i < 20; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(laplacian(sq, p, kAnalytic), Quaternion{-4.0}) < 1e-8);
        const Quaternion expect_cu =
            Quaternion{-12.0 * p.t} + iota_at(p.alpha, p.beta) * (-4.0 * p.r);
        CHECK(qdist(laplacian(cu, p, kAnalytic), expect_cu) < 1e-7);
        CHECK(laplacian(fharm, p, kAnalytic).norm() < 1e-8);
    }
}

TEST_CASE("first-derivative Laplacian route") {
    std::mt19937_64 rng(58);
    const StructuredField sq = fueter_map(power_seed(2));
    const StructuredField idp = fueter_map(power_seed(1));
    const StructuredField cu = fueter_map(power_seed(3));
    const QuatField cu_q = as_quat_field(cu);
    double max_diff = 0.0;
    for (int i = 0; i < 256; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(laplacian_via_dbar(sq, p, kAnalytic), Quaternion{-4.0}) < 1e-12);
        CHECK(laplacian_via_dbar(idp, p, kAnalytic).norm() < 1e-13);
        max_diff = std::max(max_diff, qdist(laplacian_via_dbar(cu, p, kAnalytic),
                                            laplacian(cu_q, p, kAnalytic)));
    }
    CHECK(max_diff < 1e-6);
}

TEST_CASE("negative control derivatives") {
    std::mt19937_64 rng(59);
    const auto controls = negative_controls();
    const QuatField fx = as_quat_field(*find_field(controls, "control:x"));
    const QuatField fx3q = as_quat_field(*find_field(controls, "control:x^3"));
    const QuatField lap_x3 =
        derived_field([fx3q](const SphericalPoint& p) { return laplacian(fx3q, p, kAnalytic); });
    for (int i = 0; i < 10; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        // D_l x = i while the condition target -2v/r vanishes
        CHECK(qdist(fueter_left(fx, p, kAnalytic), q_i) < 1e-12);
        // D_l lap(x^3) = D_l(6x) = 6i
        CHECK(qdist(fueter_left_spherical(lap_x3, p, kAnalytic), 6.0 * q_i) < 1e-5);
    }
}

TEST_CASE("FD backends approach the analytic partials at their nominal order") {
    const StructuredField f = fueter_map(exp_seed());
    const SphericalPoint p{0.3, 1.2, 1.1, 1.3, false};
    for (Backend b : {Backend::fd2, Backend::fd4}) {
        const int order = b == Backend::fd2 ? 2 : 4;
        double prev_err = 0.0;
        double h = 0.1;
        for (int lvl = 0; lvl < 3; ++lvl, h *= 0.5) {
            const DerivativeEngine e{b, h, false};
            const double err =
                std::abs(first_partial(f.u, p, Var::t, e) - f.u.partial(p, Var::t));
            if (lvl > 0) {
                const double ratio = prev_err / err;
                CHECK(ratio > std::pow(2.0, order - 0.6));
                CHECK(ratio < std::pow(2.0, order + 0.6));
            }
            prev_err = err;
        }
    }
}
