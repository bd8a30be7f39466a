#include <cmath>

#include <doctest.h>

#include "spdcube/errors.hpp"
#include "spdcube/tensor.hpp"

using namespace spdcube;
using namespace spdcube::nlo;

namespace {

double max_diff(const ContractedDMatrix& a, const ContractedDMatrix& b)
{
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) m = std::max(m, std::abs(a.d[i][j] - b.d[i][j]));
    return m;
}

}  // namespace

TEST_SUITE("tensor")
{
    TEST_CASE("bundled d matrix carries the 3m pattern and values")
    {
        const auto d = lithium_niobate_d();
        CHECK(d.d[2][2] == -34.0);
        CHECK(d.d[2][0] == -4.88);
        CHECK(d.d[2][1] == -4.88);
        CHECK(d.d[0][4] == -4.88);
        CHECK(d.d[1][3] == -4.88);
        CHECK(d.d[1][1] == 2.58);
        CHECK(d.d[1][0] == -2.58);
        CHECK(d.d[0][5] == -2.58);
        CHECK(d.d[0][0] == 0.0);
        CHECK(d.d[0][1] == 0.0);
        CHECK(d.d[0][2] == 0.0);
        CHECK(is_c3v_structured(d));
    }

    TEST_CASE("structure check rejects a broken pattern")
    {
        auto d = lithium_niobate_d();
        d.d[0][0] = 0.5;
        CHECK_FALSE(is_c3v_structured(d));
        auto e = lithium_niobate_d();
        e.d[2][1] = e.d[2][0] + 1e-3;  // d31 pair must match
        CHECK_FALSE(is_c3v_structured(e));
    }

    TEST_CASE("expand and contract are exact inverses")
    {
        const auto d = lithium_niobate_d();
        const auto t = expand(d);
        // symmetry in the trailing index pair
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) CHECK(t.d[i][j][k] == t.d[i][k][j]);
        CHECK(max_diff(contract(t), d) == 0.0);
    }

    TEST_CASE("contract rejects asymmetric tensors")
    {
        auto t = expand(lithium_niobate_d());
        t.d[0][1][2] += 1e-6;
        CHECK_THROWS_AS(contract(t), SymmetryViolation);
    }

    TEST_CASE("threefold rotation about the optic axis is a symmetry")
    {
        const auto t = expand(lithium_niobate_d());
        for (double angle : {120.0, -120.0, 240.0}) {
            const auto r = Rotation::about_axis({0, 0, 1}, angle);
            const auto rotated = contract(rotate_tensor(t, r), 1e-6);
            CHECK(max_diff(rotated, lithium_niobate_d()) < 1e-9);
        }
        // a generic angle is not
        const auto r = Rotation::about_axis({0, 0, 1}, 45.0);
        const auto rotated = contract(rotate_tensor(t, r), 1e-6);
        CHECK(max_diff(rotated, lithium_niobate_d()) > 1.0);
    }

    TEST_CASE("rotation round trip restores the tensor")
    {
        const auto t = expand(lithium_niobate_d());
        const auto r = Rotation::optic_axis_on_diagonal(30.0);
        const auto back = rotate_tensor(rotate_tensor(t, r),
                                        Rotation::from_matrix(mat_transpose(r.R)));
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    m = std::max(m, std::abs(back.d[i][j][k] - t.d[i][j][k]));
        CHECK(m < 1e-12);
    }

    TEST_CASE("rotation factories produce proper rotations")
    {
        const auto r = Rotation::z_to({1, 0, 0});
        const Vec3 img = r.apply({0, 0, 1});
        CHECK(img[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(img[1]) < 1e-12);
        CHECK(std::abs(img[2]) < 1e-12);
        CHECK(mat_det(r.R) == doctest::Approx(1.0).epsilon(1e-12));

        const auto diag = Rotation::optic_axis_on_diagonal(0.0);
        const Vec3 axis = diag.apply({0, 0, 1});
        CHECK(axis[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
        CHECK(std::abs(axis[1]) < 1e-12);
        CHECK(axis[2] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }

    TEST_CASE("bad rotation matrices are rejected")
    {
        Mat3 m = mat_identity();
        m[0][0] = 2.0;
        CHECK_THROWS_AS(Rotation::from_matrix(m), SpdcError);
        Mat3 reflect = mat_identity();
        reflect[2][2] = -1.0;  // det = -1
        CHECK_THROWS_AS(Rotation::from_matrix(reflect), SpdcError);
    }

    TEST_CASE("effective d recovers matrix entries for axis-aligned fields")
    {
        const auto t = expand(lithium_niobate_d());
        const PolarizationVector x({1, 0, 0}), y({0, 1, 0}), z({0, 0, 1});
        CHECK(effective_d(t, z, z, z) == doctest::Approx(-34.0).epsilon(1e-12));
        CHECK(effective_d(t, z, x, x) == doctest::Approx(-4.88).epsilon(1e-12));
        CHECK(effective_d(t, y, y, y) == doctest::Approx(2.58).epsilon(1e-12));
        CHECK(effective_d(t, x, x, x) == 0.0);
    }

    TEST_CASE("polarization vectors normalize and reject zero input")
    {
        const PolarizationVector p({3, 0, 4});
        CHECK(p.e[0] == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(p.e[2] == doctest::Approx(0.8).epsilon(1e-15));
        CHECK_THROWS_AS(PolarizationVector({0, 0, 0}), SpdcError);
    }
}
