#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fueter/complex_seed.hpp"
#include "fueter/verify.hpp"

using namespace fueter;

namespace {

double cdist(Complex a, Complex b) { return std::abs(a - b); }

} // namespace

TEST_CASE("seed catalog contents and frozen jet values") {
    const auto seeds = seed_catalog();
    REQUIRE(seeds.size() == 6);
    CHECK(seeds[0].name == "z");
    CHECK(seeds[1].name == "z^2");
    CHECK(seeds[2].name == "z^3");
    CHECK(seeds[3].name == "exp");
    CHECK(seeds[4].name == "1/z");
    CHECK(seeds[5].name == "log");

    // z^2 at 1+2i: (-3+4i, 2+4i, 2)
    const auto j = seeds[1].eval(Complex(1, 2), 2);
    CHECK(cdist(j[0], Complex(-3, 4)) < 1e-14);
    CHECK(cdist(j[1], Complex(2, 4)) < 1e-14);
    CHECK(cdist(j[2], Complex(2, 0)) < 1e-14);
    CHECK(cdist(seeds[1].eval(Complex(1, 2))[3], Complex(0, 0)) == 0.0);

    // exp at i*pi: Euler identity, all derivatives equal
    const auto e = seeds[3].eval(Complex(0, pi), 2);
    CHECK(cdist(e[0], Complex(-1, 0)) < 1e-14);
    CHECK(cdist(e[1], Complex(-1, 0)) < 1e-14);
    CHECK(cdist(e[2], Complex(-1, 0)) < 1e-14);

    CHECK_THROWS_AS(seeds[4].eval(Complex(0, 0)), std::domain_error);
    CHECK_THROWS_AS(seeds[5].eval(Complex(0, 0)), std::domain_error);
}

TEST_CASE("jets are consistent with finite differences of the value") {
    std::mt19937_64 rng(31);
    const double h = 1e-5;
    for (const ComplexSeed& s : seed_catalog()) {
        for (int i = 0; i < 50; ++i) {
            // stay inside the upper half-plane, away from z = 0
            const Complex z(3.0 * uniform01(rng) - 1.5, 0.4 + 2.0 * uniform01(rng));
            const auto j = s.eval(z, 3);
            const Complex fd1 = (s.eval(z + h, 0)[0] - s.eval(z - h, 0)[0]) / (2.0 * h);
            const Complex fd2 = (s.eval(z + h, 1)[1] - s.eval(z - h, 1)[1]) / (2.0 * h);
            const Complex fd3 = (s.eval(z + h, 2)[2] - s.eval(z - h, 2)[2]) / (2.0 * h);
            const double scale = 1.0 + std::abs(j[0]);
            CHECK(std::abs(fd1 - j[1]) < 1e-7 * scale);
            CHECK(std::abs(fd2 - j[2]) < 1e-6 * scale);
            CHECK(std::abs(fd3 - j[3]) < 1e-5 * scale);
        }
    }
}

TEST_CASE("derivative seed shifts the jet") {
    const ComplexSeed d = derivative_seed(power_seed(3));
    const Complex z(0.7, 1.1);
    const auto j = d.eval(z, 2);
    CHECK(cdist(j[0], 3.0 * z * z) < 1e-14);
    CHECK(cdist(j[1], 6.0 * z) < 1e-14);
    CHECK(cdist(j[2], Complex(6, 0)) < 1e-14);

    const ComplexSeed dlog = derivative_seed(log_seed());
    CHECK(cdist(dlog.eval(z, 1)[0], 1.0 / z) < 1e-14);
    CHECK(cdist(dlog.eval(z, 1)[1], -1.0 / (z * z)) < 1e-14);
    CHECK_THROWS_AS(dlog.eval(Complex(0, 0)), std::domain_error);
}

TEST_CASE("exp_iw seed is the bounded periodic exponential") {
    const ComplexSeed g = exp_iw_seed();
    const Complex w(1.0, 0.5);
    CHECK(cdist(g.eval(w, 1)[0], std::exp(Complex(0, 1) * w)) < 1e-14);
    CHECK(cdist(g.eval(w, 1)[1], Complex(0, 1) * std::exp(Complex(0, 1) * w)) < 1e-14);
    CHECK(cdist(g.eval(w + two_pi, 0)[0], g.eval(w, 0)[0]) < 1e-13);
}
