#pragma once

/// Real-valued fields of (t, r, alpha, beta) exposing analytic first
/// partials, plus the combinators used to assemble test fixtures.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fueter/spherical.hpp"

namespace fueter {

struct ScalarField {
    std::function<double(const SphericalPoint&)> value;
    // Analytic first partial with respect to one coordinate; empty when the
    // field only supports value evaluation.
    std::function<double(const SphericalPoint&, Var)> partial;

    bool has_partials() const { return static_cast<bool>(partial); }

    double operator()(const SphericalPoint& p) const { return value(p); }
};

inline ScalarField sf_const(double c) {
    return {[c](const SphericalPoint&) { return c; },
            [](const SphericalPoint&, Var) { return 0.0; }};
}

inline ScalarField sf_coord_t() {
    return {[](const SphericalPoint& p) { return p.t; },
            [](const SphericalPoint&, Var v) { return v == Var::t ? 1.0 : 0.0; }};
}

inline ScalarField sf_coord_x() {
    return {[](const SphericalPoint& p) { return p.r * std::cos(p.alpha) * std::sin(p.beta); },
            [](const SphericalPoint& p, Var v) {
                switch (v) {
                    case Var::t: return 0.0;
                    case Var::r: return std::cos(p.alpha) * std::sin(p.beta);
                    case Var::alpha: return -p.r * std::sin(p.alpha) * std::sin(p.beta);
                    default: return p.r * std::cos(p.alpha) * std::cos(p.beta);
                }
            }};
}

inline ScalarField sf_coord_y() {
    return {[](const SphericalPoint& p) { return p.r * std::sin(p.alpha) * std::sin(p.beta); },
            [](const SphericalPoint& p, Var v) {
                switch (v) {
                    case Var::t: return 0.0;
                    case Var::r: return std::sin(p.alpha) * std::sin(p.beta);
                    case Var::alpha: return p.r * std::cos(p.alpha) * std::sin(p.beta);
                    default: return p.r * std::sin(p.alpha) * std::cos(p.beta);
                }
            }};
}

inline ScalarField sf_coord_z() {
    return {[](const SphericalPoint& p) { return p.r * std::cos(p.beta); },
            [](const SphericalPoint& p, Var v) {
                switch (v) {
                    case Var::t: return 0.0;
                    case Var::r: return std::cos(p.beta);
                    case Var::alpha: return 0.0;
                    default: return -p.r * std::sin(p.beta);
                }
            }};
}

inline ScalarField sf_sum(ScalarField a, ScalarField b) {
    ScalarField f;
    f.value = [av = a.value, bv = b.value](const SphericalPoint& p) { return av(p) + bv(p); };
    if (a.has_partials() && b.has_partials())
        f.partial = [ap = a.partial, bp = b.partial](const SphericalPoint& p, Var v) {
            return ap(p, v) + bp(p, v);
        };
    return f;
}

inline ScalarField sf_product(ScalarField a, ScalarField b) {
    ScalarField f;
    f.value = [av = a.value, bv = b.value](const SphericalPoint& p) { return av(p) * bv(p); };
    if (a.has_partials() && b.has_partials())
        f.partial = [a, b](const SphericalPoint& p, Var v) {
            return a.partial(p, v) * b.value(p) + a.value(p) * b.partial(p, v);
        };
    return f;
}

inline ScalarField sf_scale(ScalarField a, double c) {
    ScalarField f;
    f.value = [av = a.value, c](const SphericalPoint& p) { return c * av(p); };
    if (a.has_partials())
        f.partial = [ap = a.partial, c](const SphericalPoint& p, Var v) { return c * ap(p, v); };
    return f;
}

inline ScalarField sf_zero() { return sf_const(0.0); }

/// amp * cos(m*alpha + phase_a) * cos(n*beta + phase_b); building block of
/// the random C^2 angular fixtures.
struct TrigTerm {
    double amp = 1.0;
    int m = 0;
    double phase_a = 0.0;
    int n = 0;
    double phase_b = 0.0;
};

inline ScalarField make_trig_field(std::vector<TrigTerm> terms) {
    ScalarField f;
    f.value = [terms](const SphericalPoint& p) {
        double s = 0.0;
        for (const TrigTerm& tt : terms)
            s += tt.amp * std::cos(tt.m * p.alpha + tt.phase_a) * std::cos(tt.n * p.beta + tt.phase_b);
        return s;
    };
    f.partial = [terms](const SphericalPoint& p, Var v) {
        double s = 0.0;
        for (const TrigTerm& tt : terms) {
            const double fa = std::cos(tt.m * p.alpha + tt.phase_a);
            const double fb = std::cos(tt.n * p.beta + tt.phase_b);
            switch (v) {
                case Var::t:
                case Var::r: break;
                case Var::alpha:
                    s += -tt.amp * tt.m * std::sin(tt.m * p.alpha + tt.phase_a) * fb;
                    break;
                case Var::beta:
                    s += -tt.amp * tt.n * fa * std::sin(tt.n * p.beta + tt.phase_b);
                    break;
            }
        }
        return s;
    };
    return f;
}

} // namespace fueter
