#pragma once

#include <array>

#include "spdcube/linalg.hpp"
#include "spdcube/tensor.hpp"

namespace spdcube::disp {

enum class Branch { ordinary, extraordinary };

// Three-pole Sellmeier form n^2 = 1 + sum b_i L^2 / (L^2 - c_i), L in um.
// Coefficients live in the config layer, not in code; the defaults shipped in
// the built-in config are for congruent lithium niobate.
struct SellmeierCoeffs {
    std::array<double, 6> ordinary{};       // b1 c1 b2 c2 b3 c3
    std::array<double, 6> extraordinary{};  // b1 c1 b2 c2 b3 c3
    double window_min_um = 0.4;
    double window_max_um = 5.0;
};

// n at the given vacuum wavelength (meters). Throws OutOfValidityRange
// outside the declared window.
double refractive_index(const SellmeierCoeffs& coeffs, double wavelength, Branch branch);

// Index for a linear polarization at angle psi from the optic axis:
// 1/n^2 = cos^2(psi)/n_e^2 + sin^2(psi)/n_o^2.
double index_at_angle(const SellmeierCoeffs& coeffs, double wavelength, double psi_rad);

// Same, with psi taken from the geometry: the angle between the polarization
// direction and the optic axis (crystal z mapped through the orientation).
double index_for_polarization(const SellmeierCoeffs& coeffs, double wavelength,
                              const nlo::Rotation& orientation, const Vec3& polarization);

// 4 pi (n_harm - n_fund) / lambda_fund, rad/m.
double delta_k(double lambda_fund, double n_fund, double n_harm);

// pi / |dk|; +infinity when dk == 0.
double coherence_length(double dk);

}
