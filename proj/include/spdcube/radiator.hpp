#pragma once

#include <complex>
#include <vector>

#include "spdcube/dispersion.hpp"
#include "spdcube/efficiency.hpp"
#include "spdcube/linalg.hpp"
#include "spdcube/tensor.hpp"

namespace spdcube::radiator {

using efficiency::Beam;
using efficiency::CubeGeometry;

// Which half-space the excitation enters from. The lab frame is fixed with
// n_above filling z > 0 and n_below filling z < 0; entering through glass
// means propagating along +z, entering through air along -z.
enum class Side { air, glass };

enum class Hemisphere { forward, backward };

// Undepleted plane wave inside the cube: E(r) = amplitude * pol * exp(i k.r).
struct PlaneWaveField {
    std::complex<double> amplitude{0.0, 0.0};  // V/m, includes Fresnel entry factor
    Vec3 polarization{1, 0, 0};                // unit
    Vec3 k{0, 0, 0};                           // rad/m, inside the cube
    double wavelength = 0.0;                   // m, vacuum
};

// Nonlinear dipoles at cell centers of a cube-filling lattice. moments are
// polarization density times cell volume (C m). For plane-wave drive the
// density amplitude is uniform and only the phase varies; that metadata
// enables exact per-cell form factors and a closed-form whole-cube sum.
struct DipoleGrid {
    std::vector<Vec3> positions;   // m, cube centered at the origin
    std::vector<CVec3> moments;    // C m
    double cell_size = 0.0;        // m; 0 means point dipoles
    bool plane_wave = false;
    CVec3 density_amplitude;       // C/m^2, valid when plane_wave
    Vec3 k_drive{0, 0, 0};         // rad/m, valid when plane_wave
    double cube_edge = 0.0;        // m, valid when plane_wave
};

// Angular grid over the full sphere, theta-major layout
// (index = i_theta * n_phi + i_phi), theta in [0, pi] including both poles,
// phi in [0, 2 pi).
struct FarFieldMap {
    int n_theta = 181;
    int n_phi = 360;
    std::vector<double> theta;      // rad, size n_theta
    std::vector<double> phi;        // rad, size n_phi
    std::vector<double> intensity;  // W/sr (relative units), size n_theta * n_phi
    double n_upper = 1.0;           // medium index for theta < pi/2
    double n_lower = 1.5;           // medium index for theta > pi/2
    double forward_sign = 1.0;      // +1: forward along +z, -1: along -z
};

// Relative collected SFG intensity per (signal, idler) input polarization,
// rows = signal {x, y}, cols = idler {x, y}.
struct PolarizationMatrix {
    double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

// Normal-incidence entry: amplitude t = 2 n_entry / (n_entry + n_cube), wave
// vector from the cube index at the beam wavelength and polarization.
PlaneWaveField internal_field(const Beam& beam, const CubeGeometry& geom,
                              const disp::SellmeierCoeffs& coeffs, Side side);

// P_i(r) = eps0 sum_jk d_ijk E1_j(r) E2_k(r) sampled at the centers of a
// resolution^3 lattice filling the cube (resolution >= 8). The tensor is
// given in crystal axes and rotated into the lab frame by the orientation.
DipoleGrid nonlinear_polarization(const PlaneWaveField& E1, const PlaneWaveField& E2,
                                  const nlo::Rank3Tensor& tensor, int resolution,
                                  const CubeGeometry& geom);

// Coherent superposition per direction with hemisphere-dependent wavenumber;
// each lattice cell radiates with its analytic plane-wave form factor, which
// makes the sum equal the continuum integral at any resolution. `fast` takes
// the closed-form whole-cube expression when the grid allows it (identical
// result, O(1) per direction).
FarFieldMap far_field(const DipoleGrid& grid, double lambda_out, const CubeGeometry& geom,
                      int n_theta = 181, int n_phi = 360, bool fast = true,
                      int threads = 1);

// Integral of the map over the full sphere (midpoint solid-angle weights,
// exact partition of 4 pi).
double total_power(const FarFieldMap& map);

// Power inside the cone of half-angle asin(NA / n_hemisphere) about the
// forward (or backward) axis, divided by total. The theta cell containing
// the cone boundary is split exactly.
double collection_fraction(const FarFieldMap& map, double numerical_aperture,
                           Hemisphere hemisphere);

// Power in the forward hemisphere over power in the backward hemisphere.
double forward_backward_ratio(const FarFieldMap& map);

// Drives nonlinear_polarization for each (signal, idler) in {x, y}^2 and
// collects the SFG intensity within the NA cone about the forward axis.
PolarizationMatrix polarization_matrix(const nlo::Rank3Tensor& tensor,
                                       const CubeGeometry& geom,
                                       const disp::SellmeierCoeffs& coeffs,
                                       double lambda_s, double lambda_i,
                                       double numerical_aperture,
                                       Side side = Side::glass, int resolution = 16,
                                       int n_theta = 181, int n_phi = 360);

}
