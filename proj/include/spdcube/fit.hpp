#pragma once

#include <optional>
#include <string>
#include <vector>

namespace spdcube::fit {

struct XYPoint {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> sigma_y;  // > 0 when present
};

struct XYSeries {
    std::vector<XYPoint> points;
};

struct Cos2Fit {
    double amplitude = 0.0;      // A >= 0
    double theta0_deg = 0.0;     // in [0, 180)
    double offset = 0.0;         // B
    double residual_norm = 0.0;
    bool theta0_defined = true;  // false when the amplitude is consistent with zero
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct EfficiencyRecord {
    std::string cube_id;
    double size = 0.0;                   // m
    double biphoton_rate = 0.0;          // Hz
    double pump_power = 0.0;             // W
    double spot_diameter = 0.0;          // m
    double conversion_efficiency = 0.0;  // Hz m / W, filled by cube_summary
};

enum class LossMode { per_pair, per_photon };

// Least squares of y = A cos^2(theta - theta0) + B through the double-angle
// linearization y = c0 + cc cos(2 theta) + cs sin(2 theta); closed form, no
// iteration. Angles in degrees; points need to span at least 90 degrees.
// Sigma-weighted when every point carries sigma_y.
Cos2Fit fit_cos2(const XYSeries& data);

// Ordinary (or sigma-weighted) least squares line.
LinearFit fit_linear(const XYSeries& data);

// rate / (I V) with I = power / (pi (spot/2)^2) and V = size^3; Hz m / W
// (1e9 of these is the conventional GHz/Wm figure).
double conversion_efficiency(double rate, double power, double spot_diameter,
                             double cube_size);

// raw / prod(t) in per-pair mode, raw / prod(t)^2 in per-photon mode (both
// photons must survive each lossy element).
double loss_correction(double raw_rate, const std::vector<double>& transmissions,
                       LossMode mode = LossMode::per_pair);

// The four measured cubes shipped as the bundled default.
std::vector<EfficiencyRecord> bundled_cube_records();

struct CubeSummary {
    std::vector<EfficiencyRecord> rows;  // input order, efficiencies filled
    std::string text;                    // aligned plain-text table
};

CubeSummary cube_summary(std::vector<EfficiencyRecord> records);

}
