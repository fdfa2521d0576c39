#pragma once

/// Differential operators on quaternion fields.
///
/// The left operator D_l = d/dt + i d/dx + j d/dy + k d/dz multiplies the
/// imaginary units from the left; D_r multiplies them from the right; the
/// conjugates carry minus signs on the spatial part.  In spherical
/// coordinates the same operators read
///   D_l = d/dt + iota d/dr - (1/r) ang_l,
///   ang_l = inv_iota_alpha d/dalpha + inv_iota_beta d/dbeta,
/// with the frame inverses multiplying from the left (right-multiplied for
/// the right-handed versions).  Cartesian partials for spherical-native
/// fields use the exact Jacobian of (t,r,alpha,beta) -> (t,x,y,z) instead
/// of stepping in Cartesian space across the beta poles.

#include <array>
#include <cmath>
#include <stdexcept>

#include "fueter/engine.hpp"
#include "fueter/fields.hpp"
#include "fueter/quaternion.hpp"
#include "fueter/scalar_field.hpp"
#include "fueter/spherical.hpp"

namespace fueter {

/// (F_t, F_x, F_y, F_z) by the chain rule.
inline std::array<Quaternion, 4> cartesian_partials(const QuatField& F, const SphericalPoint& p,
                                                    const DerivativeEngine& e) {
    const double sa = std::sin(p.alpha), ca = std::cos(p.alpha);
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    if (std::abs(sb) < kDegenerateSinBeta)
        throw std::domain_error("cartesian_partials: degenerate point, sin(beta) ~ 0");
    const Quaternion Ft = F.partial(p, Var::t, e);
    const Quaternion Fr = F.partial(p, Var::r, e);
    const Quaternion Fa = F.partial(p, Var::alpha, e);
    const Quaternion Fb = F.partial(p, Var::beta, e);
    const double r = p.r;
    const Quaternion Fx = Fr * (ca * sb) + Fa * (-sa / (r * sb)) + Fb * (ca * cb / r);
    const Quaternion Fy = Fr * (sa * sb) + Fa * (ca / (r * sb)) + Fb * (sa * cb / r);
    const Quaternion Fz = Fr * cb + Fb * (-sb / r);
    return {Ft, Fx, Fy, Fz};
}

inline Quaternion fueter_left(const QuatField& F, const SphericalPoint& p,
                              const DerivativeEngine& e) {
    const auto d = cartesian_partials(F, p, e);
    return d[0] + q_i * d[1] + q_j * d[2] + q_k * d[3];
}

inline Quaternion fueter_right(const QuatField& F, const SphericalPoint& p,
                               const DerivativeEngine& e) {
    const auto d = cartesian_partials(F, p, e);
    return d[0] + d[1] * q_i + d[2] * q_j + d[3] * q_k;
}

inline Quaternion fueter_conj_left(const QuatField& F, const SphericalPoint& p,
                                   const DerivativeEngine& e) {
    const auto d = cartesian_partials(F, p, e);
    return d[0] - q_i * d[1] - q_j * d[2] - q_k * d[3];
}

inline Quaternion fueter_conj_right(const QuatField& F, const SphericalPoint& p,
                                    const DerivativeEngine& e) {
    const auto d = cartesian_partials(F, p, e);
    return d[0] - d[1] * q_i - d[2] * q_j - d[3] * q_k;
}

/// ang_l F = inv_iota_alpha F_alpha + inv_iota_beta F_beta.
inline Quaternion angular_derivative(const QuatField& F, const SphericalPoint& p,
                                     const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    return fr.inv_iota_alpha * F.partial(p, Var::alpha, e) +
           fr.inv_iota_beta * F.partial(p, Var::beta, e);
}

inline Quaternion angular_derivative_scalar(const ScalarField& g, const SphericalPoint& p,
                                            const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    return fr.inv_iota_alpha * first_partial(g, p, Var::alpha, e) +
           fr.inv_iota_beta * first_partial(g, p, Var::beta, e);
}

/// Spherical form of D_l; must agree with fueter_left everywhere.
inline Quaternion fueter_left_spherical(const QuatField& F, const SphericalPoint& p,
                                        const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion ang = fr.inv_iota_alpha * F.partial(p, Var::alpha, e) +
                           fr.inv_iota_beta * F.partial(p, Var::beta, e);
    return F.partial(p, Var::t, e) + fr.iota * F.partial(p, Var::r, e) - ang * (1.0 / p.r);
}

inline Quaternion fueter_right_spherical(const QuatField& F, const SphericalPoint& p,
                                         const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion ang = F.partial(p, Var::alpha, e) * fr.inv_iota_alpha +
                           F.partial(p, Var::beta, e) * fr.inv_iota_beta;
    return F.partial(p, Var::t, e) + F.partial(p, Var::r, e) * fr.iota - ang * (1.0 / p.r);
}

inline Quaternion fueter_conj_left_spherical(const QuatField& F, const SphericalPoint& p,
                                             const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion ang = fr.inv_iota_alpha * F.partial(p, Var::alpha, e) +
                           fr.inv_iota_beta * F.partial(p, Var::beta, e);
    return F.partial(p, Var::t, e) - fr.iota * F.partial(p, Var::r, e) + ang * (1.0 / p.r);
}

inline Quaternion fueter_conj_right_spherical(const QuatField& F, const SphericalPoint& p,
                                              const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion ang = F.partial(p, Var::alpha, e) * fr.inv_iota_alpha +
                           F.partial(p, Var::beta, e) * fr.inv_iota_beta;
    return F.partial(p, Var::t, e) - F.partial(p, Var::r, e) * fr.iota + ang * (1.0 / p.r);
}

/// d/db (d/da F) with the same stacking policy as scalar second_partial.
inline Quaternion quat_second_partial(const QuatField& F, const SphericalPoint& p, Var a, Var b,
                                      const DerivativeEngine& e) {
    const double step = e.backend == Backend::analytic ? kInnerStep : e.h;
    const int order = e.backend == Backend::fd4 ? 4 : 2;
    return fd_derivative([&](double dx) { return F.partial(shifted(p, b, dx), a, e); }, step, order,
                         e.richardson);
}

/// Componentwise 4D Laplacian in spherical form:
///   F_tt + F_rr + (2/r) F_r + (1/r^2) [ F_bb + cot(b) F_b + F_aa / sin^2(b) ].
inline Quaternion laplacian(const QuatField& F, const SphericalPoint& p,
                            const DerivativeEngine& e) {
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    if (std::abs(sb) < kDegenerateSinBeta)
        throw std::domain_error("laplacian: degenerate point, sin(beta) ~ 0");
    const Quaternion Ftt = quat_second_partial(F, p, Var::t, Var::t, e);
    const Quaternion Frr = quat_second_partial(F, p, Var::r, Var::r, e);
    const Quaternion Faa = quat_second_partial(F, p, Var::alpha, Var::alpha, e);
    const Quaternion Fbb = quat_second_partial(F, p, Var::beta, Var::beta, e);
    const Quaternion Fr = F.partial(p, Var::r, e);
    const Quaternion Fb = F.partial(p, Var::beta, e);
    const double r = p.r;
    return Ftt + Frr + Fr * (2.0 / r) +
           (Fbb + Fb * (cb / sb) + Faa * (1.0 / (sb * sb))) * (1.0 / (r * r));
}

inline Quaternion laplacian(const StructuredField& f, const SphericalPoint& p,
                            const DerivativeEngine& e) {
    return laplacian(as_quat_field(f), p, e);
}

/// Laplacian from first derivatives only, valid when f satisfies the
/// structural condition:
///   lap f = -2 [ -(iota/r) f_t + (iota/r^2) v + (1/r^2) ang_l v ].
/// On fields violating the condition the value is meaningless.
inline Quaternion laplacian_via_dbar(const StructuredField& f, const SphericalPoint& p,
                                     const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const double v = f.v.value(p);
    const Quaternion Ft = Quaternion{first_partial(f.u, p, Var::t, e)} +
                          fr.iota * first_partial(f.v, p, Var::t, e);
    const Quaternion ang_v = fr.inv_iota_alpha * first_partial(f.v, p, Var::alpha, e) +
                             fr.inv_iota_beta * first_partial(f.v, p, Var::beta, e);
    const double r = p.r;
    return -2.0 * (fr.iota * Ft * (-1.0 / r) + fr.iota * (v / (r * r)) + ang_v * (1.0 / (r * r)));
}

/// Second angular derivative ang_l(ang_l v) for scalar v, by the full
/// product-rule expansion.  The mixed partials v_ba = d_a d_b v and
/// v_ab = d_b d_a v are evaluated independently, so their cancellation
/// against each other happens numerically rather than by assumption.
inline Quaternion angular_second(const ScalarField& v, const SphericalPoint& p,
                                 const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const FrameDerivs fd = frame_derivs_at(p.alpha, p.beta);
    const double va = first_partial(v, p, Var::alpha, e);
    const double vb = first_partial(v, p, Var::beta, e);
    const double vaa = second_partial(v, p, Var::alpha, Var::alpha, e);
    const double vbb = second_partial(v, p, Var::beta, Var::beta, e);
    const double v_ba = second_partial(v, p, Var::beta, Var::alpha, e); // d_alpha d_beta v
    const double v_ab = second_partial(v, p, Var::alpha, Var::beta, e); // d_beta d_alpha v
    const Quaternion t_alpha = fr.inv_iota_alpha * (fd.d_inv_alpha_dalpha * va +
                                                    fr.inv_iota_alpha * vaa +
                                                    fd.d_inv_beta_dalpha * vb +
                                                    fr.inv_iota_beta * v_ba);
    const Quaternion t_beta = fr.inv_iota_beta * (fd.d_inv_alpha_dbeta * va +
                                                  fr.inv_iota_alpha * v_ab +
                                                  fd.d_inv_beta_dbeta * vb +
                                                  fr.inv_iota_beta * vbb);
    return t_alpha + t_beta;
}

/// D_l and D_r of the same field, sharing one set of partials.
struct LeftRight {
    Quaternion left;
    Quaternion right;
};

inline LeftRight fueter_left_right_spherical(const QuatField& F, const SphericalPoint& p,
                                             const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion Ft = F.partial(p, Var::t, e);
    const Quaternion Fr = F.partial(p, Var::r, e);
    const Quaternion Fa = F.partial(p, Var::alpha, e);
    const Quaternion Fb = F.partial(p, Var::beta, e);
    const double inv_r = 1.0 / p.r;
    return {Ft + fr.iota * Fr - (fr.inv_iota_alpha * Fa + fr.inv_iota_beta * Fb) * inv_r,
            Ft + Fr * fr.iota - (Fa * fr.inv_iota_alpha + Fb * fr.inv_iota_beta) * inv_r};
}

/// 4D Laplacian of a scalar field in spherical form.
inline double scalar_laplacian(const ScalarField& g, const SphericalPoint& p,
                               const DerivativeEngine& e) {
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    if (std::abs(sb) < kDegenerateSinBeta)
        throw std::domain_error("scalar_laplacian: degenerate point, sin(beta) ~ 0");
    const double gtt = second_partial(g, p, Var::t, Var::t, e);
    const double grr = second_partial(g, p, Var::r, Var::r, e);
    const double gaa = second_partial(g, p, Var::alpha, Var::alpha, e);
    const double gbb = second_partial(g, p, Var::beta, Var::beta, e);
    const double gr = first_partial(g, p, Var::r, e);
    const double gb = first_partial(g, p, Var::beta, e);
    const double r = p.r;
    return gtt + grr + 2.0 * gr / r + (gbb + gb * cb / sb + gaa / (sb * sb)) / (r * r);
}

// Scalar-field convenience wrappers.
inline Quaternion fueter_left(const ScalarField& g, const SphericalPoint& p,
                              const DerivativeEngine& e) {
    return fueter_left(as_quat_field(g), p, e);
}
inline Quaternion fueter_right(const ScalarField& g, const SphericalPoint& p,
                               const DerivativeEngine& e) {
    return fueter_right(as_quat_field(g), p, e);
}
inline Quaternion fueter_conj_left(const ScalarField& g, const SphericalPoint& p,
                                   const DerivativeEngine& e) {
    return fueter_conj_left(as_quat_field(g), p, e);
}

} // namespace fueter
