#pragma once

/// Quaternion algebra over double: q = w + xi + yj + zk with the
/// right-handed Hamilton table (ij = k, i2 = j2 = k2 = -1).

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fueter {

struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w{w_}, x{x_}, y{y_}, z{z_} {}
    constexpr Quaternion(double real) : w{real} {}

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }

    // Hamilton product; non-commutative.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }

    bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline constexpr Quaternion q_one{1, 0, 0, 0};
inline constexpr Quaternion q_i{0, 1, 0, 0};
inline constexpr Quaternion q_j{0, 0, 1, 0};
inline constexpr Quaternion q_k{0, 0, 0, 1};

constexpr Quaternion q_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

/// conj(a) / |a|^2; the zero quaternion has no inverse.
inline Quaternion q_inv(const Quaternion& a) {
    const double n2 = a.norm_sq();
    if (n2 == 0.0) throw std::domain_error("q_inv: zero quaternion");
    return a.conj() / n2;
}

/// Radial unit pure imaginary (xi + yj + zk)/|(x,y,z)|; undefined at the origin.
inline Quaternion iota_from_cartesian(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) throw std::domain_error("iota_from_cartesian: zero vector");
    return {0.0, x / r, y / r, z / r};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

} // namespace fueter
