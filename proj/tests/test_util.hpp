#pragma once

// Shared test helpers.  q_pow is the independent oracle for the radial
// power fields: repeated Hamilton products, no reuse of the field code.

#include <cmath>
#include <random>

#include "fueter/quaternion.hpp"
#include "fueter/spherical.hpp"
#include "fueter/verify.hpp"

namespace testutil {

inline fueter::Quaternion q_pow(const fueter::Quaternion& q, int n) {
    fueter::Quaternion acc{1.0};
    for (int i = 0; i < n; ++i) acc = acc * q;
    return acc;
}

inline double qdist(const fueter::Quaternion& a, const fueter::Quaternion& b) {
    return (a - b).norm();
}

inline fueter::Quaternion random_quaternion(std::mt19937_64& rng, double scale = 2.0) {
    auto u = [&rng] { return 2.0 * fueter::uniform01(rng) - 1.0; };
    return {scale * u(), scale * u(), scale * u(), scale * u()};
}

inline fueter::SphericalPoint random_point(std::mt19937_64& rng,
                                           const fueter::Box& box = fueter::Box{}) {
    fueter::SphericalPoint p;
    p.t = box.t_min + (box.t_max - box.t_min) * fueter::uniform01(rng);
    p.r = box.r_min + (box.r_max - box.r_min) * fueter::uniform01(rng);
    p.alpha = fueter::two_pi * fueter::uniform01(rng);
    p.beta = box.beta_min + (box.beta_max - box.beta_min) * fueter::uniform01(rng);
    return p;
}

} // namespace testutil
