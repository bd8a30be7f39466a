#pragma once

#include <vector>

#include "spdcube/dispersion.hpp"
#include "spdcube/linalg.hpp"
#include "spdcube/tensor.hpp"

namespace spdcube::efficiency {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kEpsilon0 = 8.8541878128e-12; // F/m

// Cube of edge L between two half-spaces; orientation maps crystal axes to
// the lab frame (z normal to the substrate, cube edges along x/y/z).
struct CubeGeometry {
    double edge_length = 4e-6;      // m
    nlo::Rotation orientation;      // crystal -> lab
    double n_above = 1.0;           // z > 0 half-space (air)
    double n_below = 1.5;           // z < 0 half-space (glass)
};

struct Beam {
    double wavelength = 1.56e-6;    // m, vacuum
    double power = 0.06;            // W
    double spot_diameter = 10e-6;   // m, hard-edge disk
    nlo::PolarizationVector polarization{Vec3{1, 0, 0}};
    Vec3 propagation{0, 0, 1};      // unit
};

// Which area enters eta. `spot` uses the pump disk area; `min_spot_facet`
// clips it to the cube facet when the spot overfills the cube.
enum class AreaConvention { spot, min_spot_facet };

double spot_area(const Beam& beam);
double effective_area(const CubeGeometry& geom, const Beam& beam, AreaConvention conv);

// sin(x)/x with sinc(0) = 1.
double sinc(double x);

// Plane-wave undepleted-pump SHG power conversion efficiency
//   eta = 8 pi^2 d^2 L^2 / (n_2w n_w^2 eps0 c lambda_w^2 A) * sinc^2(dk L / 2)
// with d_eff in pm/V and dk = 4 pi (n_2w - n_w) / lambda_w. Indices follow
// the beam polarization through the index ellipse; the harmonic is taken
// copolarized with the fundamental.
double shg_efficiency(const CubeGeometry& geom, const Beam& beam, double d_eff_pm_V,
                      const disp::SellmeierCoeffs& coeffs,
                      AreaConvention conv = AreaConvention::spot);

// Sum-frequency generalization, eta = P_sum / (P_1 P_2):
//   eta = 8 pi^2 d^2 L^2 / (n_1 n_2 n_3 eps0 c lambda_3^2 A) * sinc^2(dk L / 2)
// with 1/lambda_3 = 1/lambda_1 + 1/lambda_2 and
// dk = 2 pi (n_3/lambda_3 - n_1/lambda_1 - n_2/lambda_2). For identical
// inputs this is exactly 4x shg_efficiency (two distinct-field permutations
// double the driven polarization).
double sfg_efficiency(const CubeGeometry& geom, const Beam& beam1, const Beam& beam2,
                      double d_eff_pm_V, const disp::SellmeierCoeffs& coeffs,
                      AreaConvention conv = AreaConvention::spot);

struct OrientationPoint {
    double angle_deg;
    double d_eff_pm_V;
    double eta_per_W;
};

// Rotates the pump polarization in the plane normal to the propagation
// direction and recomputes d_eff and eta per angle. d_eff couples the
// doubled field to the optic axis: effective_d(c_axis, e(angle), e(angle)),
// which for the 3m tensor is d31 + (d33 - d31) (e . c)^2 — an exact
// cos^2-law in the angle. The dispersion/geometry prefactor is evaluated
// once from the nominal beam so the sweep scales purely with d_eff^2.
std::vector<OrientationPoint> orientation_sweep(const CubeGeometry& geom, const Beam& beam,
                                                const nlo::Rank3Tensor& tensor,
                                                const disp::SellmeierCoeffs& coeffs,
                                                const std::vector<double>& angles_deg,
                                                AreaConvention conv = AreaConvention::spot);

}
