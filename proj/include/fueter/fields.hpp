#pragma once

/// The catalog of structured quaternionic fields f = u + iota*v:
/// radial (Fueter-constructed) fields, non-axial product fields built from
/// angular Cauchy-Riemann pairs, and negative controls engineered to
/// violate the structural condition.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fueter/complex_seed.hpp"
#include "fueter/engine.hpp"
#include "fueter/quaternion.hpp"
#include "fueter/scalar_field.hpp"
#include "fueter/spherical.hpp"

namespace fueter {

/// Quaternion-valued field with engine-aware first partials.
struct QuatField {
    std::function<Quaternion(const SphericalPoint&)> value;
    std::function<Quaternion(const SphericalPoint&, Var, const DerivativeEngine&)> partial;

    Quaternion operator()(const SphericalPoint& p) const { return value(p); }
};

/// FD partial of a bare quaternion-valued function (used for derived fields
/// that exist only numerically, e.g. a pointwise Laplacian route).
template <class F>
Quaternion quat_fd_partial(F&& f, const SphericalPoint& p, Var v, double h, bool richardson) {
    return fd_derivative([&](double dx) { return f(shifted(p, v, dx)); }, h, 4, richardson);
}

inline QuatField quat_field_from_components(ScalarField c0, ScalarField c1, ScalarField c2,
                                            ScalarField c3) {
    QuatField q;
    q.value = [c0, c1, c2, c3](const SphericalPoint& p) {
        return Quaternion{c0.value(p), c1.value(p), c2.value(p), c3.value(p)};
    };
    q.partial = [c0, c1, c2, c3, val = q.value](const SphericalPoint& p, Var v,
                                                const DerivativeEngine& e) {
        if (e.backend != Backend::analytic)
            return fd_derivative([&](double dx) { return val(shifted(p, v, dx)); }, e.h,
                                 e.backend == Backend::fd2 ? 2 : 4, e.richardson);
        return Quaternion{c0.partial(p, v), c1.partial(p, v), c2.partial(p, v), c3.partial(p, v)};
    };
    return q;
}

inline QuatField as_quat_field(const ScalarField& g) {
    return quat_field_from_components(g, sf_zero(), sf_zero(), sf_zero());
}

/// Pair of angular scalar fields (A, B) intended to satisfy the spherical
/// Cauchy-Riemann system sin(beta)^-1 A_alpha = B_beta,
/// sin(beta)^-1 B_alpha = -A_beta.
struct AngularPair {
    std::string name;
    ScalarField A;
    ScalarField B;
};

enum class FieldKind { fueter, product, control, fixture };

inline const char* kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::fueter: return "fueter";
        case FieldKind::product: return "product";
        case FieldKind::control: return "control";
        default: return "fixture";
    }
}

struct StructuredField {
    std::string name;
    FieldKind kind = FieldKind::fixture;
    std::string singular_loci = "none";
    bool satisfies_condition = false;
    bool axial = false;
    ScalarField u;
    ScalarField v;
    std::vector<Complex> seed_poles;
    std::function<StructuredField()> time_derivative;
    // For control fields: the check ids this field provably violates.  A
    // control can still pass checks whose hypotheses it meets vacuously
    // (e.g. laplacian(x) = 0, so f = x satisfies the theorem's conclusion).
    std::vector<std::string> expected_failures;
};

inline Quaternion eval_structured(const StructuredField& f, const SphericalPoint& p) {
    return Quaternion{f.u.value(p)} + iota_at(p.alpha, p.beta) * f.v.value(p);
}

/// f = u + iota*v as an engine-aware quaternion field.  Analytic angular
/// partials include the frame terms: F_alpha = u_alpha + iota_alpha v + iota v_alpha.
inline QuatField as_quat_field(const StructuredField& f) {
    QuatField q;
    q.value = [u = f.u.value, v = f.v.value](const SphericalPoint& p) {
        return Quaternion{u(p)} + iota_at(p.alpha, p.beta) * v(p);
    };
    q.partial = [u = f.u, v = f.v, val = q.value](const SphericalPoint& p, Var var,
                                                  const DerivativeEngine& e) {
        if (e.backend != Backend::analytic)
            return fd_derivative([&](double dx) { return val(shifted(p, var, dx)); }, e.h,
                                 e.backend == Backend::fd2 ? 2 : 4, e.richardson);
        Quaternion res = Quaternion{u.partial(p, var)} + iota_at(p.alpha, p.beta) * v.partial(p, var);
        if (var == Var::alpha) res += iota_alpha_at(p.alpha, p.beta) * v.value(p);
        if (var == Var::beta) res += iota_beta_at(p.alpha, p.beta) * v.value(p);
        return res;
    };
    return q;
}

/// iota * F as a field, with analytic partials by the product rule.
inline QuatField left_iota_product(const QuatField& F) {
    QuatField q;
    q.value = [F](const SphericalPoint& p) { return iota_at(p.alpha, p.beta) * F.value(p); };
    q.partial = [F](const SphericalPoint& p, Var var, const DerivativeEngine& e) {
        Quaternion res = iota_at(p.alpha, p.beta) * F.partial(p, var, e);
        if (var == Var::alpha) res += iota_alpha_at(p.alpha, p.beta) * F.value(p);
        if (var == Var::beta) res += iota_beta_at(p.alpha, p.beta) * F.value(p);
        return res;
    };
    return q;
}

namespace detail {

inline std::string seed_loci_suffix(const ComplexSeed& seed) {
    if (seed.poles.empty()) return "";
    if (seed.name == "log") return "; branch point at z=0";
    return "; seed pole at z=0";
}

} // namespace detail

/// Lift a holomorphic seed to the radial field u(t,r) + iota v(t,r) with
/// u + iv = seed(t + ir).  Partials in t and r come from the seed jet via
/// the Cauchy-Riemann relations u_t = v_r, u_r = -v_t.
inline StructuredField fueter_map(const ComplexSeed& seed) {
    StructuredField f;
    f.name = "fueter:" + seed.name;
    f.kind = FieldKind::fueter;
    f.singular_loci = "r=0" + detail::seed_loci_suffix(seed);
    f.satisfies_condition = true;
    f.axial = true;
    f.seed_poles = seed.poles;

    f.u.value = [seed](const SphericalPoint& p) {
        return seed.eval(Complex(p.t, p.r), 0)[0].real();
    };
    f.u.partial = [seed](const SphericalPoint& p, Var var) {
        if (var == Var::alpha || var == Var::beta) return 0.0;
        const Complex d1 = seed.eval(Complex(p.t, p.r), 1)[1];
        return var == Var::t ? d1.real() : -d1.imag();
    };
    f.v.value = [seed](const SphericalPoint& p) {
        return seed.eval(Complex(p.t, p.r), 0)[0].imag();
    };
    f.v.partial = [seed](const SphericalPoint& p, Var var) {
        if (var == Var::alpha || var == Var::beta) return 0.0;
        const Complex d1 = seed.eval(Complex(p.t, p.r), 1)[1];
        return var == Var::t ? d1.imag() : d1.real();
    };
    f.time_derivative = [seed] { return fueter_map(derivative_seed(seed)); };
    return f;
}

/// Angular Cauchy-Riemann pair A + iB := g(alpha + i ln tan(beta/2)).
/// The chain rule uses d/dbeta ln tan(beta/2) = 1/sin(beta).
inline AngularPair mercator_pair(const ComplexSeed& g, std::string pair_name = "") {
    if (pair_name.empty()) pair_name = "mercator:" + g.name;

    auto w_at = [](const SphericalPoint& p) {
        const double tn = std::tan(0.5 * p.beta);
        if (!(tn > 0.0)) throw std::domain_error("mercator: beta outside (0, pi)");
        return Complex(p.alpha, std::log(tn));
    };

    AngularPair pair;
    pair.name = std::move(pair_name);
    pair.A.value = [g, w_at](const SphericalPoint& p) { return g.eval(w_at(p), 0)[0].real(); };
    pair.A.partial = [g, w_at](const SphericalPoint& p, Var var) {
        if (var == Var::t || var == Var::r) return 0.0;
        const Complex d1 = g.eval(w_at(p), 1)[1];
        return var == Var::alpha ? d1.real() : -d1.imag() / std::sin(p.beta);
    };
    pair.B.value = [g, w_at](const SphericalPoint& p) { return g.eval(w_at(p), 0)[0].imag(); };
    pair.B.partial = [g, w_at](const SphericalPoint& p, Var var) {
        if (var == Var::t || var == Var::r) return 0.0;
        const Complex d1 = g.eval(w_at(p), 1)[1];
        return var == Var::alpha ? d1.imag() : d1.real() / std::sin(p.beta);
    };
    return pair;
}

/// Non-axial condition field from a radial seed and an angular pair:
/// with U + iV = seed(t + ir), u = U*A - V*B and v = U*B + V*A.
/// This product preserves holomorphy in (t, r) and the angular CR system
/// (docs/derivations.md), so the result satisfies the condition exactly.
inline StructuredField product_field(const ComplexSeed& seed, const AngularPair& ang) {
    StructuredField f;
    f.name = "product:" + seed.name + "*" + ang.name;
    f.kind = FieldKind::product;
    f.singular_loci = "r=0; beta=0" + detail::seed_loci_suffix(seed);
    f.satisfies_condition = true;
    f.axial = false;
    f.seed_poles = seed.poles;

    auto radial = [seed](const SphericalPoint& p) { return seed.eval(Complex(p.t, p.r), 1); };

    f.u.value = [radial, ang](const SphericalPoint& p) {
        const auto j = radial(p);
        return j[0].real() * ang.A.value(p) - j[0].imag() * ang.B.value(p);
    };
    f.u.partial = [radial, ang](const SphericalPoint& p, Var var) {
        const auto j = radial(p);
        const double U = j[0].real(), V = j[0].imag();
        const double Ut = j[1].real(), Vt = j[1].imag();
        switch (var) {
            case Var::t: return Ut * ang.A.value(p) - Vt * ang.B.value(p);
            case Var::r: return -Vt * ang.A.value(p) - Ut * ang.B.value(p);
            default: return U * ang.A.partial(p, var) - V * ang.B.partial(p, var);
        }
    };
    f.v.value = [radial, ang](const SphericalPoint& p) {
        const auto j = radial(p);
        return j[0].real() * ang.B.value(p) + j[0].imag() * ang.A.value(p);
    };
    f.v.partial = [radial, ang](const SphericalPoint& p, Var var) {
        const auto j = radial(p);
        const double U = j[0].real(), V = j[0].imag();
        const double Ut = j[1].real(), Vt = j[1].imag();
        switch (var) {
            case Var::t: return Ut * ang.B.value(p) + Vt * ang.A.value(p);
            case Var::r: return -Vt * ang.B.value(p) + Ut * ang.A.value(p);
            default: return U * ang.B.partial(p, var) + V * ang.A.partial(p, var);
        }
    };
    f.time_derivative = [seed, ang] { return product_field(derivative_seed(seed), ang); };
    return f;
}

namespace detail {

inline StructuredField zero_field(std::string name) {
    StructuredField f;
    f.name = std::move(name);
    f.kind = FieldKind::fixture;
    f.satisfies_condition = true; // the zero field is trivially regular
    f.axial = true;
    f.u = sf_zero();
    f.v = sf_zero();
    return f;
}

} // namespace detail

/// Scalar negative controls violating the condition: f = x, f = x^3, f = t^2.
/// f = x^3 additionally violates the regular-Laplacian conclusion
/// (laplacian(x^3) = 6x, whose left Fueter derivative is 6i).
inline std::vector<StructuredField> negative_controls() {
    std::vector<StructuredField> out;

    StructuredField cx;
    cx.name = "control:x";
    cx.kind = FieldKind::control;
    cx.satisfies_condition = false;
    cx.axial = false;
    cx.u = sf_coord_x();
    cx.v = sf_zero();
    cx.time_derivative = [] { return detail::zero_field("control:x_dt"); };
    // laplacian(x) = 0, so the theorem checks pass vacuously
    cx.expected_failures = {"condition", "holomorphy_tr", "angular_condition", "cr_system"};
    out.push_back(std::move(cx));

    StructuredField cx3;
    cx3.name = "control:x^3";
    cx3.kind = FieldKind::control;
    cx3.satisfies_condition = false;
    cx3.axial = false;
    cx3.u = sf_product(sf_coord_x(), sf_product(sf_coord_x(), sf_coord_x()));
    cx3.v = sf_zero();
    cx3.time_derivative = [] { return detail::zero_field("control:x^3_dt"); };
    // laplacian(x^3) = 6x fails regularity; the first-derivative Laplacian
    // route is identically 0 here, so theorem_dbar alone stays vacuous
    cx3.expected_failures = {"condition", "holomorphy_tr", "angular_condition", "cr_system",
                             "theorem", "theorem_direct"};
    out.push_back(std::move(cx3));

    StructuredField ct2;
    ct2.name = "control:t^2";
    ct2.kind = FieldKind::control;
    ct2.satisfies_condition = false;
    ct2.axial = true;
    ct2.u = sf_product(sf_coord_t(), sf_coord_t());
    ct2.v = sf_zero();
    // axial with v = 0: the angular checks hold vacuously, but the
    // first-derivative Laplacian route is garbage (u_t != 0)
    ct2.expected_failures = {"condition", "holomorphy_tr", "t_closure", "theorem",
                             "theorem_dbar"};
    ct2.time_derivative = [] {
        StructuredField d;
        d.name = "control:t^2_dt";
        d.kind = FieldKind::fixture;
        d.satisfies_condition = false;
        d.axial = true;
        d.u = sf_scale(sf_coord_t(), 2.0);
        d.v = sf_zero();
        return d;
    };
    out.push_back(std::move(ct2));

    return out;
}

/// The full field catalog, in stable order.
inline std::vector<StructuredField> catalog() {
    std::vector<StructuredField> fields;
    for (const ComplexSeed& s : seed_catalog()) fields.push_back(fueter_map(s));
    const AngularPair mexp = mercator_pair(exp_iw_seed(), "mercator:exp");
    fields.push_back(product_field(power_seed(1), mexp));
    fields.push_back(product_field(power_seed(2), mexp));
    fields.push_back(product_field(exp_seed(), mexp));
    for (StructuredField& c : negative_controls()) fields.push_back(std::move(c));
    return fields;
}

inline const StructuredField* find_field(const std::vector<StructuredField>& fields,
                                         const std::string& name) {
    for (const StructuredField& f : fields)
        if (f.name == name) return &f;
    return nullptr;
}

/// Closed form of the Laplacian of a radial field, written as an axial
/// structured field.  With u + iv = seed(t + ir):
///   lap(f) = -2 [ v_t/r - iota (v_r/r - v/r^2) ],
/// i.e. u~ = -2 v_t / r and v~ = 2 (v_r - v/r) / r.  These fixtures are
/// left-regular, so they solve (d/dt + iota d/dr) f~ = 2 v~ / r.
inline StructuredField fueter_laplacian_field(const ComplexSeed& seed) {
    StructuredField f;
    f.name = "regular:" + seed.name;
    f.kind = FieldKind::fixture;
    f.singular_loci = "r=0" + detail::seed_loci_suffix(seed);
    f.satisfies_condition = false; // regular, not a condition field
    f.axial = true;
    f.seed_poles = seed.poles;

    f.u.value = [seed](const SphericalPoint& p) {
        const auto j = seed.eval(Complex(p.t, p.r), 1);
        return -2.0 * j[1].imag() / p.r;
    };
    f.u.partial = [seed](const SphericalPoint& p, Var var) {
        if (var == Var::alpha || var == Var::beta) return 0.0;
        const auto j = seed.eval(Complex(p.t, p.r), 2);
        if (var == Var::t) return -2.0 * j[2].imag() / p.r;
        return -2.0 * j[2].real() / p.r + 2.0 * j[1].imag() / (p.r * p.r);
    };
    f.v.value = [seed](const SphericalPoint& p) {
        const auto j = seed.eval(Complex(p.t, p.r), 1);
        return 2.0 * (j[1].real() - j[0].imag() / p.r) / p.r;
    };
    f.v.partial = [seed](const SphericalPoint& p, Var var) {
        if (var == Var::alpha || var == Var::beta) return 0.0;
        const auto j = seed.eval(Complex(p.t, p.r), 2);
        const double r = p.r;
        if (var == Var::t) return 2.0 * (j[2].real() - j[1].imag() / r) / r;
        // d/dr of 2 v_r / r - 2 v / r^2 with v_r = Re f', v_rr = -Im f''
        return -2.0 * j[2].imag() / r - 4.0 * j[1].real() / (r * r) +
               4.0 * j[0].imag() / (r * r * r);
    };
    return f;
}

} // namespace fueter
