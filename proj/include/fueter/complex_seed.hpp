#pragma once

/// Holomorphic seed functions u + iv on the upper half-plane, evaluated
/// together with their derivatives (a jet).  Seeds feed both the radial
/// construction (argument t + ir) and the Mercator angular construction.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fueter {

using Complex = std::complex<double>;

/// Jet values (f, f', f'', f''', f'''') at one point.  Order 4 is carried
/// internally so that the derivative seed still has a full order-3 jet.
using Jet = std::array<Complex, 5>;

inline constexpr double kSeedPoleRadius = 1e-9;

struct ComplexSeed {
    std::string name;
    std::function<Jet(Complex)> jet;
    std::vector<Complex> poles; // poles / branch points in the seed plane

    /// f and derivatives up to `order` (0..3); throws at a pole.
    std::array<Complex, 4> eval(Complex z, int order = 3) const {
        if (order < 0 || order > 3) throw std::invalid_argument("ComplexSeed::eval: order must be 0..3");
        guard_pole(z);
        const Jet j = jet(z);
        return {j[0], j[1], j[2], j[3]};
    }

    Jet eval_jet(Complex z) const {
        guard_pole(z);
        return jet(z);
    }

    void guard_pole(Complex z) const {
        for (const Complex& p : poles)
            if (std::abs(z - p) < kSeedPoleRadius)
                throw std::domain_error("seed '" + name + "': evaluation at a pole");
    }
};

/// z^n for n >= 0, with d^k/dz^k = n!/(n-k)! z^(n-k).
inline ComplexSeed power_seed(int n) {
    if (n < 0) throw std::invalid_argument("power_seed: n must be >= 0");
    std::string name = n == 1 ? "z" : "z^" + std::to_string(n);
    return {std::move(name),
            [n](Complex z) {
                Jet j{};
                for (int k = 0; k <= 4; ++k) {
                    if (k > n) break;
                    double c = 1.0;
                    for (int m = n; m > n - k; --m) c *= m;
                    j[static_cast<size_t>(k)] = c * std::pow(z, n - k);
                }
                return j;
            },
            {}};
}

inline ComplexSeed exp_seed() {
    return {"exp",
            [](Complex z) {
                const Complex e = std::exp(z);
                return Jet{e, e, e, e, e};
            },
            {}};
}

/// 1/z with d^k/dz^k = (-1)^k k! z^(-k-1); pole at 0.
inline ComplexSeed reciprocal_seed() {
    return {"1/z",
            [](Complex z) {
                Jet j{};
                Complex p = 1.0 / z;
                double c = 1.0;
                for (int k = 0; k <= 4; ++k) {
                    j[static_cast<size_t>(k)] = c * p;
                    p /= z;
                    c *= -(k + 1);
                }
                return j;
            },
            {Complex{0.0, 0.0}}};
}

/// Principal-branch log; off the cut for arguments in the upper half-plane.
inline ComplexSeed log_seed() {
    return {"log",
            [](Complex z) {
                const Complex zi = 1.0 / z;
                return Jet{std::log(z), zi, -zi * zi, 2.0 * zi * zi * zi, -6.0 * zi * zi * zi * zi};
            },
            {Complex{0.0, 0.0}}};
}

inline ComplexSeed const_seed(Complex c, std::string name = "") {
    if (name.empty()) name = "const";
    return {std::move(name), [c](Complex) { return Jet{c, 0.0, 0.0, 0.0, 0.0}; }, {}};
}

/// w -> exp(inw); the bounded 2*pi-periodic exponential used by the
/// Mercator construction ("mercator:exp" is n = 1).
inline ComplexSeed exp_iw_seed(int n = 1) {
    return {"exp_iw" + (n == 1 ? std::string{} : "^" + std::to_string(n)),
            [n](Complex z) {
                const Complex in{0.0, static_cast<double>(n)};
                const Complex e = std::exp(in * z);
                return Jet{e, in * e, in * in * e, in * in * in * e, in * in * in * in * e};
            },
            {}};
}

/// Identity seed for the Mercator variable (test fixture; not periodic).
inline ComplexSeed identity_seed() { return power_seed(1); }

/// The stock seed list: z, z^2, z^3, exp, 1/z, log.
inline std::vector<ComplexSeed> seed_catalog() {
    return {power_seed(1), power_seed(2), power_seed(3), exp_seed(), reciprocal_seed(), log_seed()};
}

/// Seed of the derivative function.  The order-4 entry is unknown after the
/// shift and set to 0; nothing consumes order 4 of a derived seed.
inline ComplexSeed derivative_seed(const ComplexSeed& s) {
    return {s.name + "'",
            [base = s.jet](Complex z) {
                const Jet j = base(z);
                return Jet{j[1], j[2], j[3], j[4], 0.0};
            },
            s.poles};
}

} // namespace fueter
