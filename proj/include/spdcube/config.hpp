#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdcube/dispersion.hpp"
#include "spdcube/efficiency.hpp"
#include "spdcube/fit.hpp"
#include "spdcube/hbt.hpp"
#include "spdcube/pair_rate.hpp"
#include "spdcube/radiator.hpp"
#include "spdcube/tensor.hpp"

namespace spdcube::config {

enum class AxisPlacement { diagonal, x, y, z };
enum class TagFormat { none, csv, binary };

// Fully-typed run configuration. Defaults below are the built-in config;
// files and CLI flags override field by field. All stored values are SI.
struct RunConfig {
    // crystal
    std::string crystal_preset = "lithium_niobate";  // "none" with inline d_matrix
    std::optional<nlo::ContractedDMatrix> d_matrix;  // overrides the preset
    AxisPlacement axis = AxisPlacement::diagonal;
    double axis_azimuth_deg = 0.0;

    // optics
    double pump_wavelength = 780e-9;
    std::optional<double> signal_wavelength;  // absent: from degenerate convention
    std::optional<double> idler_wavelength;
    double bandwidth = 30e-9;
    double pump_power = 0.06;
    double spot_diameter = 10e-6;
    double na = 0.65;
    // "aligned" pins the pump polarization to the optic axis (the cos^2-law
    // maximum); a number is an in-plane angle in degrees.
    std::optional<double> pump_polarization_deg;

    // geometry
    double size = 4e-6;
    std::vector<double> sizes;  // sweep; empty means {size}
    double n_above = 1.0;
    double n_below = 1.5;
    radiator::Side side = radiator::Side::glass;

    // sellmeier
    disp::SellmeierCoeffs sellmeier{
        {2.6734, 0.01764, 1.2290, 0.05914, 12.614, 474.60},
        {2.9804, 0.02047, 0.5981, 0.0666, 8.9543, 416.08},
        0.4, 5.0};

    // hbt
    std::optional<double> hbt_pair_rate;  // absent: predicted from the model
    double hbt_duration = 10.0;
    hbt::DetectorModel det1{0.8, 100.0, 10e-12, 0.0};
    hbt::DetectorModel det2{0.8, 100.0, 10e-12, 0.0};
    double splitter_ratio = 0.5;
    double bin_width = 100e-12;
    double window = 50e-9;
    std::optional<double> peak_halfwidth;  // absent: 3x combined jitter
    TagFormat write_tags = TagFormat::none;

    // farfield
    int farfield_grid = 16;
    int theta_nodes = 181;
    int phi_nodes = 360;
    bool farfield_fast = true;

    // conventions
    pairrate::DegenerateConvention degenerate_convention =
        pairrate::DegenerateConvention::physical;
    efficiency::AreaConvention effective_area = efficiency::AreaConvention::spot;
    fit::LossMode loss_mode = fit::LossMode::per_pair;

    // run
    std::uint64_t seed = 1;
    int threads = 1;
};

// Parses the documented INI-style grammar ([section], key = value, '#'
// comments, indented continuation lines for the d-matrix block, unit
// suffixes). Unknown sections/keys and malformed values raise ConfigError
// with file:line context. Starts from the built-in defaults.
RunConfig parse(const std::string& text, const std::string& filename = "<config>");
RunConfig load_file(const std::string& path);

// Range and cross-field checks; parse() runs this, callers that mutate a
// config afterwards (CLI overrides) should rerun it.
void validate(const RunConfig& cfg, const std::string& context = "<override>");

// The resolved config rendered back in the input grammar, SI units, stable
// order; parse(serialize(c)) reproduces c exactly.
std::string serialize(const RunConfig& cfg);

// ---- resolution to domain objects ----

nlo::ContractedDMatrix crystal_matrix(const RunConfig& cfg);
nlo::Rotation orientation(const RunConfig& cfg);
efficiency::CubeGeometry cube_geometry(const RunConfig& cfg);

// Explicit values win, otherwise both default to the degenerate pair
// wavelength 2 lambda_p.  (The degenerate-convention switch only scales
// the degenerate rate formula, not these.)
double resolved_signal_wavelength(const RunConfig& cfg);
double resolved_idler_wavelength(const RunConfig& cfg);

// Pump polarization in the lab frame ("aligned" = along the optic axis).
nlo::PolarizationVector pump_polarization(const RunConfig& cfg);

// The classical beam whose SHG stands in for the SPDC: runs at the signal
// wavelength with the pump's power and spot.
efficiency::Beam shg_beam(const RunConfig& cfg);

// Copolarized effective coefficient e . d_lab : (e e) with the tensor rotated
// into the lab frame; "aligned" polarization lands exactly on d33.
double resolved_d_eff(const RunConfig& cfg);
pairrate::SweepSetup sweep_setup(const RunConfig& cfg);
double predicted_pair_rate(const RunConfig& cfg);
double resolved_peak_halfwidth(const RunConfig& cfg);

}
