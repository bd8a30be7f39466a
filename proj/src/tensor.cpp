#include "spdcube/tensor.hpp"

#include <cmath>
#include <cstdlib>

#include "spdcube/errors.hpp"

namespace spdcube::nlo {

namespace {

constexpr double kDeg = M_PI / 180.0;

// Voigt column -> index pair (0-based).
constexpr int kVoigtJ[6] = {0, 1, 2, 1, 0, 0};
constexpr int kVoigtK[6] = {0, 1, 2, 2, 2, 1};

// (j,k) -> Voigt column.
constexpr int kVoigtCol[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};

void validate_rotation(const Mat3& m)
{
    const Mat3 mtm = mat_mul(mat_transpose(m), m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(mtm[i][j] - want) > 1e-12)
                throw SpdcError("rotation matrix is not orthonormal");
        }
    if (std::abs(mat_det(m) - 1.0) > 1e-12)
        throw SpdcError("rotation matrix determinant is not +1");
}

}  // namespace

Rotation Rotation::identity()
{
    return Rotation{};
}

Rotation Rotation::about_axis(const Vec3& axis, double angle_deg)
{
    const double n = norm(axis);
    if (n < 1e-300) throw SpdcError("rotation axis must be nonzero");
    const Vec3 u = axis / n;
    const double a = angle_deg * kDeg;
    const double c = std::cos(a), s = std::sin(a), t = 1.0 - c;
    Rotation r;
    r.R = {{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
            {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
            {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}};
    return r;
}

Rotation Rotation::z_to(const Vec3& direction)
{
    const double n = norm(direction);
    if (n < 1e-300) throw SpdcError("target direction must be nonzero");
    const Vec3 d = direction / n;
    const Vec3 z{0, 0, 1};
    const double c = dot(z, d);
    if (c > 1.0 - 1e-15) return identity();
    if (c < -1.0 + 1e-15) return about_axis({1, 0, 0}, 180.0);
    const Vec3 axis = cross(z, d);
    const double angle = std::atan2(norm(axis), c) / kDeg;
    return about_axis(axis, angle);
}

Rotation Rotation::optic_axis_on_diagonal(double azimuth_deg)
{
    // Body diagonal of an axis-aligned cube: polar angle acos(1/sqrt(3)).
    const double s = std::sqrt(2.0 / 3.0);
    const double az = azimuth_deg * kDeg;
    return z_to({s * std::cos(az), s * std::sin(az), 1.0 / std::sqrt(3.0)});
}

Rotation Rotation::from_matrix(const Mat3& m)
{
    validate_rotation(m);
    Rotation r;
    r.R = m;
    return r;
}

Rotation Rotation::compose(const Rotation& inner) const
{
    Rotation r;
    r.R = mat_mul(R, inner.R);
    return r;
}

PolarizationVector::PolarizationVector(const Vec3& v)
{
    const double n = norm(v);
    if (n < 1e-300) throw SpdcError("polarization vector must be nonzero");
    e = v / n;
}

ContractedDMatrix lithium_niobate_d()
{
    const double d15 = -4.88, d22 = 2.58, d31 = -4.88, d33 = -34.0;
    ContractedDMatrix c;
    c.d = {{{0, 0, 0, 0, d15, -d22},
            {-d22, d22, 0, d15, 0, 0},
            {d31, d31, d33, 0, 0, 0}}};
    return c;
}

bool is_c3v_structured(const ContractedDMatrix& c, double tol)
{
    const auto& d = c.d;
    auto zero = [&](double v) { return std::abs(v) <= tol; };
    auto eq = [&](double a, double b) { return std::abs(a - b) <= tol; };
    return zero(d[0][0]) && zero(d[0][1]) && zero(d[0][2]) && zero(d[0][3])
        && eq(d[0][5], -d[1][1])
        && eq(d[1][0], -d[1][1]) && zero(d[1][2]) && eq(d[1][3], d[0][4])
        && zero(d[1][4]) && zero(d[1][5])
        && eq(d[2][0], d[2][1]) && zero(d[2][3]) && zero(d[2][4]) && zero(d[2][5]);
}

Rank3Tensor expand(const ContractedDMatrix& c)
{
    Rank3Tensor t;
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 6; ++m) {
            const int j = kVoigtJ[m], k = kVoigtK[m];
            t.d[i][j][k] = c.d[i][m];
            t.d[i][k][j] = c.d[i][m];
        }
    return t;
}

ContractedDMatrix contract(const Rank3Tensor& t, double rel_tol)
{
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(t.d[i][j][k]));
    const double tol = rel_tol * std::max(scale, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k)
                if (std::abs(t.d[i][j][k] - t.d[i][k][j]) > tol)
                    throw SymmetryViolation("tensor not symmetric in last two indices");
    ContractedDMatrix c;
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 6; ++m) c.d[i][m] = t.d[i][kVoigtJ[m]][kVoigtK[m]];
    return c;
}

Rank3Tensor rotate_tensor(const Rank3Tensor& t, const Rotation& r)
{
    validate_rotation(r.R);
    const auto& R = r.R;
    // Contract one index at a time instead of the naive 9-deep loop.
    std::array<std::array<std::array<double, 3>, 3>, 3> t1{}, t2{};
    Rank3Tensor out;
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                double s = 0.0;
                for (int a = 0; a < 3; ++a) s += R[i][a] * t.d[a][b][c];
                t1[i][b][c] = s;
            }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int c = 0; c < 3; ++c) {
                double s = 0.0;
                for (int b = 0; b < 3; ++b) s += R[j][b] * t1[i][b][c];
                t2[i][j][c] = s;
            }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0.0;
                for (int c = 0; c < 3; ++c) s += R[k][c] * t2[i][j][c];
                out.d[i][j][k] = s;
            }
    return out;
}

double effective_d(const Rank3Tensor& t, const PolarizationVector& e_out,
                   const PolarizationVector& e_in1, const PolarizationVector& e_in2)
{
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                s += e_out.e[i] * t.d[i][j][k] * e_in1.e[j] * e_in2.e[k];
    return s;
}

}
