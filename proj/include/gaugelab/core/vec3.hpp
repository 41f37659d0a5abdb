#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace gaugelab {

/// Cartesian 3-vector in atomic units.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(const Vec3& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

inline constexpr Vec3 e_x{1.0, 0.0, 0.0};
inline constexpr Vec3 e_y{0.0, 1.0, 0.0};
inline constexpr Vec3 e_z{0.0, 0.0, 1.0};

inline constexpr Vec3 unit(std::size_t axis) { return axis == 0 ? e_x : (axis == 1 ? e_y : e_z); }

inline std::string to_string(const Vec3& v) {
    return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
}

/// 3x3 matrix stored by rows. For a vector field A, row i is the gradient of
/// component A_i, i.e. (*this)(i, j) = dA_i/dx_j.
struct Mat3 {
    std::array<Vec3, 3> rows{};

    constexpr double operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
    constexpr double& operator()(std::size_t i, std::size_t j) { return rows[i][j]; }

    constexpr Mat3& operator+=(const Mat3& o) {
        for (std::size_t i = 0; i < 3; ++i) rows[i] += o.rows[i];
        return *this;
    }
    friend constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
    friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

/// Curl of a vector field given its Jacobian.
constexpr Vec3 curl_from_jacobian(const Mat3& j) {
    return {j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1)};
}

/// Transpose-times-vector: sum_j v_j * dA_j/dx_i.
constexpr Vec3 transpose_apply(const Mat3& j, const Vec3& v) {
    return {j(0, 0) * v.x + j(1, 0) * v.y + j(2, 0) * v.z,
            j(0, 1) * v.x + j(1, 1) * v.y + j(2, 1) * v.z,
            j(0, 2) * v.x + j(1, 2) * v.y + j(2, 2) * v.z};
}

inline bool is_finite(const Mat3& m) {
    return is_finite(m.rows[0]) && is_finite(m.rows[1]) && is_finite(m.rows[2]);
}

}  // namespace gaugelab
