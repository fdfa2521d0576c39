#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fueter/fields.hpp"
#include "fueter/verify.hpp"
#include "test_util.hpp"

using namespace fueter;
using testutil::q_pow;
using testutil::qdist;

namespace {

const DerivativeEngine kAnalytic{};

SphericalPoint equator(double t, double r) { return {t, r, 0.0, 0.5 * pi, false}; }

} // namespace

TEST_CASE("fueter_map evaluates the seed on the slice t + i r") {
    const StructuredField id = fueter_map(power_seed(1));
    CHECK(qdist(eval_structured(id, equator(1, 2)), Quaternion{1, 2, 0, 0}) < 1e-15);

    const StructuredField sq = fueter_map(power_seed(2));
    CHECK(qdist(eval_structured(sq, equator(1, 2)), Quaternion{-3, 4, 0, 0}) < 1e-14);

    const StructuredField cu = fueter_map(power_seed(3));
    CHECK(qdist(eval_structured(cu, equator(1, 1)), Quaternion{-2, 2, 0, 0}) < 1e-14);
}

TEST_CASE("power fields equal quaternion powers") {
    std::mt19937_64 rng(41);
    for (int n = 2; n <= 4; ++n) {
        const StructuredField f = fueter_map(power_seed(n));
        for (int i = 0; i < 100; ++i) {
            const SphericalPoint p = testutil::random_point(rng);
            const Quaternion expect = q_pow(from_spherical(p), n);
            CHECK(qdist(eval_structured(f, p), expect) <= 1e-12 * (1.0 + expect.norm()));
        }
    }
}

TEST_CASE("structured values commute with the base point") {
    std::mt19937_64 rng(42);
    for (const StructuredField& f : catalog()) {
        for (int i = 0; i < 50; ++i) {
            SphericalPoint p = testutil::random_point(rng);
            if (near_seed_pole(p, f.seed_poles)) continue;
            const Quaternion val = eval_structured(f, p);
            const Quaternion q = from_spherical(p);
            CHECK(qdist(val * q, q * val) <= 1e-12 * (1.0 + val.norm()) * (1.0 + q.norm()));
        }
    }
}

TEST_CASE("analytic partials match central differences") {
    std::mt19937_64 rng(43);
    const double h = 1e-5;
    for (const StructuredField& f : catalog()) {
        for (const ScalarField* s : {&f.u, &f.v}) {
            for (int i = 0; i < 25; ++i) {
                SphericalPoint p = testutil::random_point(rng);
                if (near_seed_pole(p, f.seed_poles)) continue;
                for (Var v : {Var::t, Var::r, Var::alpha, Var::beta}) {
                    const double fd =
                        (s->value(shifted(p, v, h)) - s->value(shifted(p, v, -h))) / (2 * h);
                    const double an = s->partial(p, v);
                    CHECK(std::abs(fd - an) < 2e-7 * (1.0 + std::abs(an)));
                }
            }
        }
    }
}

TEST_CASE("mercator pairs") {
    // exp(iw): A = cos(a) cot(b/2), B = sin(a) cot(b/2)
    const AngularPair mx = mercator_pair(exp_iw_seed(), "mercator:exp");
    const SphericalPoint p{0.0, 1.0, 1.0, 1.0, false};
    const double cot_half = 1.0 / std::tan(0.5);
    CHECK(mx.A.value(p) == Catch::Approx(std::cos(1.0) * cot_half).epsilon(1e-12));
    CHECK(mx.B.value(p) == Catch::Approx(std::sin(1.0) * cot_half).epsilon(1e-12));

    // CR residual at (alpha=1, beta=1) vanishes
    const double sb = std::sin(p.beta);
    CHECK(std::abs(mx.A.partial(p, Var::alpha) / sb - mx.B.partial(p, Var::beta)) < 1e-12);
    CHECK(std::abs(mx.B.partial(p, Var::alpha) / sb + mx.A.partial(p, Var::beta)) < 1e-12);

    // constants solve the system with zero partials
    const AngularPair mc = mercator_pair(const_seed(Complex(0.25, -2.0)));
    CHECK(mc.A.value(p) == 0.25);
    CHECK(mc.B.value(p) == -2.0);
    CHECK(mc.A.partial(p, Var::alpha) == 0.0);
    CHECK(mc.B.partial(p, Var::beta) == 0.0);

    // identity seed: A = alpha, B = ln tan(beta/2)
    const AngularPair mw = mercator_pair(identity_seed(), "mercator:w");
    CHECK(mw.A.value(p) == Catch::Approx(1.0));
    CHECK(mw.B.value(p) == Catch::Approx(std::log(std::tan(0.5))));
    CHECK(std::abs(mw.A.partial(p, Var::alpha) / sb - mw.B.partial(p, Var::beta)) < 1e-13);

    CHECK_THROWS_AS(mx.A.value(SphericalPoint{0, 1, 0, -0.1, false}), std::domain_error);
}

TEST_CASE("product field reduces to the radial field for a unit angular factor") {
    const StructuredField base = fueter_map(power_seed(1));
    const StructuredField prod =
        product_field(power_seed(1), mercator_pair(const_seed(Complex(1, 0), "one")));
    std::mt19937_64 rng(44);
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        CHECK(qdist(eval_structured(prod, p), eval_structured(base, p)) < 1e-14);
    }
}

TEST_CASE("non-CR angular pair violates the system") {
    AngularPair bad;
    bad.name = "fixture:cos_alpha";
    bad.A = make_trig_field({TrigTerm{1.0, 1, 0.0, 0, 0.0}}); // cos(alpha)
    bad.B = sf_zero();
    const ResidualReport r = check_cr_system(bad, SamplingPlan{}, kAnalytic, "cr_system");
    CHECK_FALSE(r.pass);
    CHECK(r.rel_max > 0.1);
}

TEST_CASE("catalog shape") {
    const auto cat = catalog();
    REQUIRE(cat.size() == 12);
    const StructuredField* sq = find_field(cat, "fueter:z^2");
    REQUIRE(sq != nullptr);
    CHECK(sq->satisfies_condition);
    CHECK(sq->axial);
    const StructuredField* px = find_field(cat, "product:z^2*mercator:exp");
    REQUIRE(px != nullptr);
    CHECK(px->satisfies_condition);
    CHECK_FALSE(px->axial);
    const StructuredField* c3 = find_field(cat, "control:x^3");
    REQUIRE(c3 != nullptr);
    CHECK_FALSE(c3->satisfies_condition);
    CHECK(c3->kind == FieldKind::control);
}

TEST_CASE("time derivative fields") {
    const StructuredField f = fueter_map(power_seed(3));
    REQUIRE(f.time_derivative);
    const StructuredField ft = f.time_derivative();
    std::mt19937_64 rng(45);
    for (int i = 0; i < 30; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        // d/dt of z^3 on the slice is 3 z^2
        const Complex z(p.t, p.r);
        const Complex expect = 3.0 * z * z;
        CHECK(qdist(eval_structured(ft, p),
                    Quaternion{expect.real()} + iota_at(p.alpha, p.beta) * expect.imag()) < 1e-12);
    }
}

TEST_CASE("regular fixture from the z^3 Laplacian closed form") {
    const StructuredField reg = fueter_laplacian_field(power_seed(3));
    std::mt19937_64 rng(46);
    for (int i = 0; i < 30; ++i) {
        const SphericalPoint p = testutil::random_point(rng);
        // lap(fueter z^3) = -12 t - 4 r iota
        const Quaternion expect =
            Quaternion{-12.0 * p.t} + iota_at(p.alpha, p.beta) * (-4.0 * p.r);
        CHECK(qdist(eval_structured(reg, p), expect) < 1e-12 * (1.0 + expect.norm()));
    }
}
