#pragma once

/// Spherical parametrization p = t + r*iota(alpha, beta) and the moving
/// frame iota, iota_alpha, iota_beta with its quaternionic inverses.
///
/// Conventions:
///   x = r cos(alpha) sin(beta), y = r sin(alpha) sin(beta), z = r cos(beta),
///   alpha in [0, 2*pi), beta in (0, pi).  The poles sin(beta) = 0 are a
///   degenerate locus: conversions flag them, frames refuse them.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fueter/quaternion.hpp"

namespace fueter {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Var { t, r, alpha, beta };

struct SphericalPoint {
    double t = 0.0;
    double r = 1.0;
    double alpha = 0.0;
    double beta = 0.5 * pi;
    bool degenerate = false; // sin(beta) = 0 at conversion time
};

inline SphericalPoint shifted(SphericalPoint p, Var v, double dx) {
    switch (v) {
        case Var::t: p.t += dx; break;
        case Var::r: p.r += dx; break;
        case Var::alpha: p.alpha += dx; break;
        case Var::beta: p.beta += dx; break;
    }
    return p;
}

inline const char* var_name(Var v) {
    switch (v) {
        case Var::t: return "t";
        case Var::r: return "r";
        case Var::alpha: return "alpha";
        default: return "beta";
    }
}

/// Unit radial imaginary at the given angles.
inline Quaternion iota_at(double alpha, double beta) {
    const double sb = std::sin(beta);
    return {0.0, std::cos(alpha) * sb, std::sin(alpha) * sb, std::cos(beta)};
}

// d(iota)/dalpha and d(iota)/dbeta; defined everywhere, including the poles.
inline Quaternion iota_alpha_at(double alpha, double beta) {
    const double sb = std::sin(beta);
    return {0.0, -std::sin(alpha) * sb, std::cos(alpha) * sb, 0.0};
}

inline Quaternion iota_beta_at(double alpha, double beta) {
    const double cb = std::cos(beta);
    return {0.0, std::cos(alpha) * cb, std::sin(alpha) * cb, -std::sin(beta)};
}

inline SphericalPoint to_spherical(const Quaternion& q) {
    const double r = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (r == 0.0) throw std::domain_error("to_spherical: r = 0 singular locus");
    const double rho = std::hypot(q.x, q.y);
    SphericalPoint p;
    p.t = q.w;
    p.r = r;
    p.degenerate = (rho == 0.0);
    p.alpha = p.degenerate ? 0.0 : std::atan2(q.y, q.x);
    if (p.alpha < 0.0) p.alpha += two_pi;
    p.beta = std::atan2(rho, q.z);
    return p;
}

inline Quaternion from_spherical(const SphericalPoint& p) {
    return Quaternion{p.t, 0, 0, 0} + p.r * iota_at(p.alpha, p.beta);
}

/// iota and its angular derivatives at (alpha, beta), plus their inverses.
/// The inverses exist only off the poles.
struct Frame {
    Quaternion iota;
    Quaternion iota_alpha;
    Quaternion iota_beta;
    Quaternion inv_iota_alpha;
    Quaternion inv_iota_beta;
};

inline constexpr double kDegenerateSinBeta = 1e-12;

inline Frame frame_at(double alpha, double beta) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double sb = std::sin(beta), cb = std::cos(beta);
    if (std::abs(sb) < kDegenerateSinBeta)
        throw std::domain_error("frame_at: degenerate frame, sin(beta) ~ 0");
    Frame f;
    f.iota = {0.0, ca * sb, sa * sb, cb};
    f.iota_alpha = {0.0, -sa * sb, ca * sb, 0.0};
    f.iota_beta = {0.0, ca * cb, sa * cb, -sb};
    f.inv_iota_alpha = q_inv(f.iota_alpha);
    f.inv_iota_beta = q_inv(f.iota_beta);
    return f;
}

/// Closed-form angular derivatives of the inverse frame elements,
/// hand-derived from inv_iota_alpha = -iota_alpha / sin^2(beta) and
/// inv_iota_beta = -iota_beta (see docs/derivations.md):
///   d(inv_iota_alpha)/dalpha = ( cos a, sin a, 0) / sin b
///   d(inv_iota_alpha)/dbeta  = (-sin a, cos a, 0) * cos b / sin^2 b
///   d(inv_iota_beta)/dalpha  = ( sin a, -cos a, 0) * cos b
///   d(inv_iota_beta)/dbeta   = iota
struct FrameDerivs {
    Quaternion d_inv_alpha_dalpha;
    Quaternion d_inv_alpha_dbeta;
    Quaternion d_inv_beta_dalpha;
    Quaternion d_inv_beta_dbeta;
};

inline FrameDerivs frame_derivs_at(double alpha, double beta) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double sb = std::sin(beta), cb = std::cos(beta);
    if (std::abs(sb) < kDegenerateSinBeta)
        throw std::domain_error("frame_derivs_at: degenerate frame, sin(beta) ~ 0");
    FrameDerivs d;
    d.d_inv_alpha_dalpha = {0.0, ca / sb, sa / sb, 0.0};
    d.d_inv_alpha_dbeta = {0.0, -sa * cb / (sb * sb), ca * cb / (sb * sb), 0.0};
    d.d_inv_beta_dalpha = {0.0, sa * cb, -ca * cb, 0.0};
    d.d_inv_beta_dbeta = iota_at(alpha, beta);
    return d;
}

} // namespace fueter
