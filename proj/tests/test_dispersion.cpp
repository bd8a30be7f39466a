#include <cmath>
#include <limits>

#include <doctest.h>

#include "spdcube/config.hpp"
#include "spdcube/dispersion.hpp"
#include "spdcube/errors.hpp"
#include "testutil.hpp"

using namespace spdcube;
using namespace spdcube::disp;

namespace {

SellmeierCoeffs coeffs()
{
    return config::RunConfig{}.sellmeier;
}

}  // namespace

TEST_SUITE("dispersion")
{
    TEST_CASE("indices at the working wavelengths")
    {
        const auto c = coeffs();
        CHECK(refractive_index(c, 780e-9, Branch::ordinary)
              == doctest::Approx(2.257956032913).epsilon(1e-10));
        CHECK(refractive_index(c, 780e-9, Branch::extraordinary)
              == doctest::Approx(2.177768829489).epsilon(1e-10));
        CHECK(refractive_index(c, 1560e-9, Branch::ordinary)
              == doctest::Approx(2.210772722148).epsilon(1e-10));
        CHECK(refractive_index(c, 1560e-9, Branch::extraordinary)
              == doctest::Approx(2.137271619991).epsilon(1e-10));
    }

    TEST_CASE("birefringence is negative uniaxial")
    {
        const auto c = coeffs();
        for (double lam : {0.5e-6, 0.78e-6, 1.56e-6, 3.0e-6})
            CHECK(refractive_index(c, lam, Branch::extraordinary)
                  < refractive_index(c, lam, Branch::ordinary));
    }

    TEST_CASE("window is enforced on both sides")
    {
        const auto c = coeffs();
        CHECK_THROWS_AS(refractive_index(c, 0.39e-6, Branch::ordinary), OutOfValidityRange);
        CHECK_THROWS_AS(refractive_index(c, 5.1e-6, Branch::ordinary), OutOfValidityRange);
        CHECK_NOTHROW(refractive_index(c, 0.4e-6, Branch::ordinary));
        CHECK_NOTHROW(refractive_index(c, 5.0e-6, Branch::ordinary));
        try {
            refractive_index(c, 0.2e-6, Branch::extraordinary);
            FAIL("expected OutOfValidityRange");
        } catch (const OutOfValidityRange& e) {
            const std::string msg = e.what();
            CHECK(msg.find("0.4") != std::string::npos);
            CHECK(msg.find("5") != std::string::npos);
        }
    }

    TEST_CASE("index ellipse interpolates between the branches")
    {
        const auto c = coeffs();
        const double no = refractive_index(c, 1560e-9, Branch::ordinary);
        const double ne = refractive_index(c, 1560e-9, Branch::extraordinary);
        CHECK(index_at_angle(c, 1560e-9, 0.0) == doctest::Approx(ne).epsilon(1e-14));
        CHECK(index_at_angle(c, 1560e-9, M_PI / 2) == doctest::Approx(no).epsilon(1e-14));
        CHECK(index_at_angle(c, 1560e-9, M_PI / 4)
              == doctest::Approx(2.1730904570758502).epsilon(1e-12));
        // monotone between the extremes
        double prev = ne;
        for (int i = 1; i <= 90; ++i) {
            const double n = index_at_angle(c, 1560e-9, i * M_PI / 180.0);
            CHECK(n >= prev);
            prev = n;
        }
    }

    TEST_CASE("polarization-resolved index follows the orientation")
    {
        const auto c = coeffs();
        const auto orient = nlo::Rotation::optic_axis_on_diagonal(30.0);
        const Vec3 axis = orient.apply({0, 0, 1});
        // polarization along the axis sees the extraordinary index
        CHECK(index_for_polarization(c, 1560e-9, orient, axis)
              == doctest::Approx(refractive_index(c, 1560e-9, Branch::extraordinary))
                     .epsilon(1e-14));
        // perpendicular to the axis sees the ordinary index
        const Vec3 perp = normalized(Vec3{axis[1], -axis[0], 0.0});
        CHECK(index_for_polarization(c, 1560e-9, orient, perp)
              == doctest::Approx(refractive_index(c, 1560e-9, Branch::ordinary))
                     .epsilon(1e-14));
    }

    TEST_CASE("collinear mismatch and coherence length")
    {
        CHECK(rel_err(delta_k(1.56e-6, 2.0, 2.1), 805536.5778435366) < 1e-13);
        CHECK(rel_err(coherence_length(delta_k(1.56e-6, 2.0, 2.1)), 3.9e-6) < 1e-13);

        const auto c = coeffs();
        const double nf = refractive_index(c, 1560e-9, Branch::extraordinary);
        const double nh = refractive_index(c, 780e-9, Branch::extraordinary);
        const double dk = delta_k(1560e-9, nf, nh);
        CHECK(rel_err(dk, 326219.8355122459) < 1e-10);
        CHECK(rel_err(coherence_length(dk), 9.630293169195904e-6) < 1e-10);
    }

    TEST_CASE("matched media have infinite coherence length")
    {
        CHECK(std::isinf(coherence_length(0.0)));
        CHECK(coherence_length(0.0) > 0.0);
    }

    TEST_CASE("sign of the mismatch does not matter for the length")
    {
        CHECK(coherence_length(delta_k(1.0e-6, 2.2, 2.0))
              == coherence_length(delta_k(1.0e-6, 2.0, 2.2)));
    }
}
