#pragma once

/// Pluggable derivative backends.
///
/// First derivatives come either from a field's analytic partials or from
/// central finite differences of its values (fd2 / fd4).  Higher derivatives
/// are always finite differences stacked on top of first derivatives; FD is
/// never nested more than twice.  The `richardson` flag extrapolates each
/// stencil one level, raising its order by two.  Step policy: `h` drives the
/// fd2/fd4 value stencils, kInnerStep drives FD-on-analytic second
/// derivatives, kOuterStep drives the outermost operator applications of
/// third-order quantities.

#include <cmath>
#include <stdexcept>
#include <string>

#include "fueter/scalar_field.hpp"
#include "fueter/spherical.hpp"

namespace fueter {

enum class Backend { analytic, fd2, fd4 };

inline constexpr double kInnerStep = 1e-3;
inline constexpr double kOuterStep = 1e-2;

struct DerivativeEngine {
    Backend backend = Backend::analytic;
    double h = kOuterStep;
    bool richardson = true;

    std::string descriptor() const {
        std::string s;
        switch (backend) {
            case Backend::analytic: s = "analytic"; break;
            case Backend::fd2: s = "fd2"; break;
            case Backend::fd4: s = "fd4"; break;
        }
        if (richardson) s += "+richardson";
        return s;
    }

    /// h as reported: the fd2/fd4 value-stencil step; 0 when first
    /// derivatives are analytic (composite steps are the fixed constants).
    double reported_h() const { return backend == Backend::analytic ? 0.0 : h; }
};

inline Backend backend_from_name(const std::string& name) {
    if (name == "analytic") return Backend::analytic;
    if (name == "fd2") return Backend::fd2;
    if (name == "fd4") return Backend::fd4;
    throw std::invalid_argument("unknown backend '" + name + "'");
}

// Central stencils, generic over double- or Quaternion-valued callables.
template <class F>
auto central2(F&& f, double h) {
    return (f(h) - f(-h)) * (1.0 / (2.0 * h));
}

template <class F>
auto central4(F&& f, double h) {
    return (f(-2.0 * h) - f(2.0 * h) + 8.0 * (f(h) - f(-h))) * (1.0 / (12.0 * h));
}

/// One Richardson step for a base method of order p: (2^p D(h/2) - D(h)) / (2^p - 1).
template <class F>
auto fd_derivative(F&& f, double h, int order, bool richardson) {
    if (order == 2) {
        auto d = [&](double step) { return central2(f, step); };
        if (!richardson) return d(h);
        return (4.0 * d(0.5 * h) - d(h)) * (1.0 / 3.0);
    }
    auto d = [&](double step) { return central4(f, step); };
    if (!richardson) return d(h);
    return (16.0 * d(0.5 * h) - d(h)) * (1.0 / 15.0);
}

/// First partial of a scalar field under the engine's backend.
inline double first_partial(const ScalarField& f, const SphericalPoint& p, Var v,
                            const DerivativeEngine& e) {
    switch (e.backend) {
        case Backend::analytic:
            if (!f.has_partials())
                throw std::domain_error("analytic backend on a field without analytic partials");
            return f.partial(p, v);
        case Backend::fd2:
            return fd_derivative([&](double dx) { return f.value(shifted(p, v, dx)); }, e.h, 2,
                                 e.richardson);
        default:
            return fd_derivative([&](double dx) { return f.value(shifted(p, v, dx)); }, e.h, 4,
                                 e.richardson);
    }
}

/// d/db (d/da f).  With analytic partials the inner derivative is exact and
/// the outer is an fd2 stencil at kInnerStep (order 4 with richardson);
/// otherwise both layers are value stencils at the engine's h.
inline double second_partial(const ScalarField& f, const SphericalPoint& p, Var a, Var b,
                             const DerivativeEngine& e) {
    if (e.backend == Backend::analytic) {
        if (!f.has_partials())
            throw std::domain_error("analytic backend on a field without analytic partials");
        return fd_derivative([&](double dx) { return f.partial(shifted(p, b, dx), a); }, kInnerStep,
                             2, e.richardson);
    }
    const int order = e.backend == Backend::fd2 ? 2 : 4;
    auto inner = [&](const SphericalPoint& q) {
        if (f.has_partials()) return f.partial(q, a);
        return fd_derivative([&](double dx) { return f.value(shifted(q, a, dx)); }, e.h, order,
                             e.richardson);
    };
    return fd_derivative([&](double dx) { return inner(shifted(p, b, dx)); }, e.h, order,
                         e.richardson);
}

} // namespace fueter
