#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace spdcube {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

// Complex-valued 3-vector (field amplitudes, dipole moments).
struct CVec3 {
    std::complex<double> x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

    std::complex<double> operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator*(std::complex<double> s) const { return {x * s, y * s, z * s}; }
};

inline double norm2(const CVec3& a)
{
    return std::norm(a.x) + std::norm(a.y) + std::norm(a.z);
}

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 mat_identity()
{
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

inline Vec3 mat_apply(const Mat3& m, const Vec3& v)
{
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

inline Mat3 mat_transpose(const Mat3& m)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
    return r;
}

inline double mat_det(const Mat3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}
