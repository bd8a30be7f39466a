#pragma once

#include <vector>

#include "spdcube/efficiency.hpp"

namespace spdcube::pairrate {

// Degenerate wavelength convention. `half_pump` substitutes
// lambda_s = lambda_i = lambda_p / 2 (factor 256), the normalization the
// degenerate formula is usually quoted with; `physical` uses
// lambda_s = lambda_i = 2 lambda_p (factor 1/256), matching a pump that
// down-converts to photons at twice its wavelength.
enum class DegenerateConvention { half_pump, physical };

const char* to_string(DegenerateConvention c);

// The rate formula as printed carries an unstated area normalization; the
// wavelength bracket is closed with C_dim = (1 um)^2 so SI inputs give Hz.
// Both general and degenerate forms share the constant, so their algebraic
// identity is exact for any closure.
inline constexpr double kDimClosure = 1e-12;  // m^2

struct SpdcConfig {
    double lambda_p = 780e-9;      // m
    double lambda_s = 1560e-9;     // m
    double lambda_i = 1560e-9;     // m
    double delta_lambda = 30e-9;   // m, collection bandwidth
    double pump_power = 0.06;      // W
};

struct RatePrediction {
    double pair_rate = 0.0;        // Hz
    double rate_per_power = 0.0;   // Hz/W
    double eta_per_W = 0.0;        // efficiency used
    SpdcConfig config;             // inputs echo
};

// rate/P = 2 pi eta (lambda_p^4 / (lambda_s^3 lambda_i^3)) (c dlambda / lambda_s^2) C_dim
RatePrediction pair_rate_general(double eta_sfg_per_W, const SpdcConfig& cfg);

// rate/P = 2 pi eta 256 c dlambda / lambda_p^4 C_dim under `half_pump`;
// the `physical` convention replaces 256 with 1/256.
RatePrediction pair_rate_degenerate(double eta_shg_per_W, double lambda_p,
                                    double delta_lambda, double pump_power,
                                    DegenerateConvention convention = DegenerateConvention::half_pump);

// Everything needed to turn a cube size into a pair rate: the SHG beam runs
// at the photon-pair wavelength, the prediction at the pump wavelength.
struct SweepSetup {
    efficiency::CubeGeometry geom;
    efficiency::Beam shg_beam;
    double d_eff_pm_V = -34.0;
    disp::SellmeierCoeffs coeffs;
    efficiency::AreaConvention area = efficiency::AreaConvention::spot;
    double lambda_p = 780e-9;
    double delta_lambda = 30e-9;
    double pump_power = 0.06;
    DegenerateConvention convention = DegenerateConvention::half_pump;
};

struct SizeRatePoint {
    double size = 0.0;             // m
    double eta_per_W = 0.0;
    RatePrediction prediction;
};

struct PowerRatePoint {
    double power = 0.0;            // W
    double pair_rate = 0.0;        // Hz
};

std::vector<SizeRatePoint> size_sweep(const std::vector<double>& sizes,
                                      const SweepSetup& setup);

// Exactly linear through the origin: rate = rate_per_power * P.
std::vector<PowerRatePoint> power_sweep(const std::vector<double>& powers,
                                        const SweepSetup& setup);

}
