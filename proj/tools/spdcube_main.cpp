#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdcube/config.hpp"
#include "spdcube/dispersion.hpp"
#include "spdcube/efficiency.hpp"
#include "spdcube/errors.hpp"
#include "spdcube/fit.hpp"
#include "spdcube/hbt.hpp"
#include "spdcube/io.hpp"
#include "spdcube/pair_rate.hpp"
#include "spdcube/radiator.hpp"
#include "spdcube/tensor.hpp"
#include "spdcube/version.hpp"

namespace {

using namespace spdcube;

struct Common {
    std::string config_path;
    std::string out_path = "-";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("-c,--config", c.config_path, "configuration file");
    cmd->add_option("-o,--out", c.out_path, "output path, '-' for stdout");
    cmd->add_option("--seed", c.seed, "override [run] seed");
    cmd->add_option("--threads", c.threads, "override [run] threads");
}

config::RunConfig load(const Common& c)
{
    config::RunConfig cfg =
        c.config_path.empty() ? config::RunConfig{} : config::load_file(c.config_path);
    if (c.seed) cfg.seed = *c.seed;
    if (c.threads) cfg.threads = *c.threads;
    return cfg;
}

template <class Fn>
void with_output(const std::string& path, bool binary, Fn&& fn)
{
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream os(path, binary ? std::ios::out | std::ios::binary : std::ios::out);
    if (!os) throw SpdcError("cannot open output file '" + path + "'");
    fn(os);
}

struct RateArgs {
    Common common;
    std::vector<double> sizes_um;
    std::vector<double> powers_mW;
    bool cubes = false;
};

void run_rate(const RateArgs& a)
{
    config::RunConfig cfg = load(a.common);
    if (!a.sizes_um.empty()) {
        cfg.sizes.clear();
        for (double s : a.sizes_um) cfg.sizes.push_back(s * 1e-6);
    }
    config::validate(cfg, "<cli>");

    with_output(a.common.out_path, false, [&](std::ostream& os) {
        io::write_header(os, cfg);
        if (a.cubes) {
            os << fit::cube_summary(fit::bundled_cube_records()).text;
            return;
        }
        const auto setup = config::sweep_setup(cfg);
        const double eta = efficiency::shg_efficiency(setup.geom, setup.shg_beam,
                                                      setup.d_eff_pm_V, setup.coeffs,
                                                      setup.area);
        const auto half_pump = pairrate::pair_rate_degenerate(
            eta, setup.lambda_p, setup.delta_lambda, setup.pump_power,
            pairrate::DegenerateConvention::half_pump);
        const auto physical = pairrate::pair_rate_degenerate(
            eta, setup.lambda_p, setup.delta_lambda, setup.pump_power,
            pairrate::DegenerateConvention::physical);
        const auto& resolved =
            cfg.degenerate_convention == pairrate::DegenerateConvention::half_pump
                ? half_pump
                : physical;
        os << "# eta_per_W = " << io::fmt(eta) << "\n";
        os << "# pair_rate_half_pump_Hz = " << io::fmt(half_pump.pair_rate) << "\n";
        os << "# pair_rate_physical_Hz = " << io::fmt(physical.pair_rate) << "\n";
        os << "# pair_rate_Hz = " << io::fmt(resolved.pair_rate) << "\n";
        os << "# rate_per_power_Hz_per_W = " << io::fmt(resolved.rate_per_power) << "\n";

        if (!a.powers_mW.empty()) {
            std::vector<double> powers;
            for (double p : a.powers_mW) powers.push_back(p * 1e-3);
            io::write_power_sweep(os, pairrate::power_sweep(powers, setup));
        } else {
            std::vector<double> sizes = cfg.sizes;
            if (sizes.empty()) sizes.push_back(cfg.size);
            io::write_size_sweep(os, pairrate::size_sweep(sizes, setup));
        }
    });
}

struct PolarizationArgs {
    Common common;
    std::vector<double> angles_deg;
};

void run_polarization(const PolarizationArgs& a)
{
    if (a.angles_deg.empty())
        throw ConfigError("polarization sweep needs at least one --angles value");
    config::RunConfig cfg = load(a.common);
    config::validate(cfg, "<cli>");

    const auto tensor = nlo::expand(config::crystal_matrix(cfg));
    const auto geom = config::cube_geometry(cfg);
    const auto beam = config::shg_beam(cfg);
    const auto points = efficiency::orientation_sweep(geom, beam, tensor, cfg.sellmeier,
                                                      a.angles_deg, cfg.effective_area);

    with_output(a.common.out_path, false, [&](std::ostream& os) {
        io::write_header(os, cfg);
        fit::XYSeries series;
        for (const auto& p : points) series.points.push_back({p.angle_deg, p.eta_per_W, {}});
        if (series.points.size() >= 4) {
            try {
                const auto f = fit::fit_cos2(series);
                os << "# fit_amplitude_per_W = " << io::fmt(f.amplitude) << "\n";
                os << "# fit_theta0_deg = " << io::fmt(f.theta0_deg) << "\n";
                os << "# fit_offset_per_W = " << io::fmt(f.offset) << "\n";
                os << "# fit_residual_norm = " << io::fmt(f.residual_norm) << "\n";
            } catch (const IllConditionedFit&) {
                // angle coverage too narrow; emit the sweep without a fit
            }
        }
        io::write_orientation_sweep(os, points);
    });
}

struct FarFieldArgs {
    Common common;
    std::optional<int> grid;
    std::optional<double> na;
    std::string side;
    std::optional<double> signal_nm;
    std::optional<double> idler_nm;
    bool matrix = false;
};

void run_farfield(const FarFieldArgs& a)
{
    config::RunConfig cfg = load(a.common);
    if (a.grid) cfg.farfield_grid = *a.grid;
    if (a.na) cfg.na = *a.na;
    if (!a.side.empty()) {
        if (a.side == "glass") cfg.side = radiator::Side::glass;
        else if (a.side == "air") cfg.side = radiator::Side::air;
        else throw ConfigError("--side must be glass or air");
    }
    if (a.signal_nm) cfg.signal_wavelength = *a.signal_nm * 1e-9;
    if (a.idler_nm) cfg.idler_wavelength = *a.idler_nm * 1e-9;
    config::validate(cfg, "<cli>");

    const auto tensor = nlo::expand(config::crystal_matrix(cfg));
    const auto geom = config::cube_geometry(cfg);
    const double lambda_s = config::resolved_signal_wavelength(cfg);
    const double lambda_i = config::resolved_idler_wavelength(cfg);

    with_output(a.common.out_path, false, [&](std::ostream& os) {
        io::write_header(os, cfg);
        if (a.matrix) {
            const auto pm = radiator::polarization_matrix(
                tensor, geom, cfg.sellmeier, lambda_s, lambda_i, cfg.na, cfg.side,
                cfg.farfield_grid, cfg.theta_nodes, cfg.phi_nodes);
            io::write_polarization_matrix(os, pm);
            return;
        }
        efficiency::Beam beam_s = config::shg_beam(cfg);
        beam_s.wavelength = lambda_s;
        efficiency::Beam beam_i = beam_s;
        beam_i.wavelength = lambda_i;
        const auto E1 = radiator::internal_field(beam_s, geom, cfg.sellmeier, cfg.side);
        const auto E2 = radiator::internal_field(beam_i, geom, cfg.sellmeier, cfg.side);
        const auto grid =
            radiator::nonlinear_polarization(E1, E2, tensor, cfg.farfield_grid, geom);
        const double lambda_out = 1.0 / (1.0 / lambda_s + 1.0 / lambda_i);
        auto map = radiator::far_field(grid, lambda_out, geom, cfg.theta_nodes,
                                       cfg.phi_nodes, cfg.farfield_fast, cfg.threads);
        map.forward_sign = cfg.side == radiator::Side::glass ? 1.0 : -1.0;

        os << "# lambda_out_m = " << io::fmt(lambda_out) << "\n";
        os << "# total_power_W = " << io::fmt(radiator::total_power(map)) << "\n";
        os << "# collection_fraction_forward = "
           << io::fmt(radiator::collection_fraction(map, cfg.na,
                                                    radiator::Hemisphere::forward))
           << "\n";
        os << "# collection_fraction_backward = "
           << io::fmt(radiator::collection_fraction(map, cfg.na,
                                                    radiator::Hemisphere::backward))
           << "\n";
        os << "# forward_backward_ratio = "
           << io::fmt(radiator::forward_backward_ratio(map)) << "\n";
        io::write_far_field(os, map);
    });
}

struct HbtArgs {
    Common common;
    std::optional<double> pair_rate;
    std::optional<double> duration;
    bool scan = false;
    std::vector<double> angles_deg;
    std::optional<double> theta0_deg;
    std::string tags_path;
};

void run_hbt(const HbtArgs& a)
{
    config::RunConfig cfg = load(a.common);
    if (a.pair_rate) cfg.hbt_pair_rate = *a.pair_rate;
    if (a.duration) cfg.hbt_duration = *a.duration;
    config::validate(cfg, "<cli>");

    const double rate =
        cfg.hbt_pair_rate ? *cfg.hbt_pair_rate : config::predicted_pair_rate(cfg);

    if (a.scan) {
        if (a.angles_deg.empty())
            throw ConfigError("--scan needs at least one --angles value");
        hbt::ScanSettings settings;
        settings.det1 = cfg.det1;
        settings.det2 = cfg.det2;
        settings.splitter_ratio = cfg.splitter_ratio;
        settings.duration = cfg.hbt_duration;
        settings.bin_width = cfg.bin_width;
        settings.window = cfg.window;
        settings.peak_halfwidth = cfg.peak_halfwidth.value_or(0.0);
        const double theta0 =
            a.theta0_deg ? *a.theta0_deg : cfg.pump_polarization_deg.value_or(0.0);
        const auto points =
            hbt::polarization_scan(a.angles_deg, rate, theta0, settings, cfg.seed);
        with_output(a.common.out_path, false, [&](std::ostream& os) {
            io::write_header(os, cfg);
            os << "# rate_max_Hz = " << io::fmt(rate) << "\n";
            os << "# theta0_deg = " << io::fmt(theta0) << "\n";
            io::write_polarization_scan(os, points);
        });
        return;
    }

    const auto pairs = hbt::generate_pairs(rate, cfg.hbt_duration, cfg.seed);
    const auto [s1, s2] =
        hbt::route_and_detect(pairs, cfg.det1, cfg.det2, cfg.seed, cfg.splitter_ratio);
    const auto hist = hbt::correlate(s1, s2, cfg.bin_width, cfg.window);
    const auto rec = hbt::car(hist, config::resolved_peak_halfwidth(cfg));

    const double r1 = hist.singles1 / hist.duration;
    const double r2 = hist.singles2 / hist.duration;
    const double coincidence_rate = rate * 2.0 * cfg.splitter_ratio
                                    * (1.0 - cfg.splitter_ratio) * cfg.det1.efficiency
                                    * cfg.det2.efficiency;
    const double predicted_car = (r1 > 0.0 && r2 > 0.0)
        ? hbt::analytic_car(coincidence_rate, r1, r2, rec.peak_width_eff)
        : 0.0;

    with_output(a.common.out_path, false, [&](std::ostream& os) {
        io::write_header(os, cfg);
        os << "# pair_rate_Hz = " << io::fmt(rate) << "\n";
        os << "# emitted_pairs = " << pairs.times.size() << "\n";
        os << "# singles1 = " << hist.singles1 << "\n";
        os << "# singles2 = " << hist.singles2 << "\n";
        os << "# peak_counts = " << io::fmt(rec.peak_counts) << "\n";
        os << "# accidental_mean = " << io::fmt(rec.accidental_mean) << "\n";
        os << "# accidental_se = " << io::fmt(rec.accidental_se) << "\n";
        os << "# car = " << io::fmt(rec.car) << "\n";
        os << "# car_std_error = " << io::fmt(rec.std_error) << "\n";
        os << "# g2_zero_minus_1 = " << io::fmt(rec.g2_zero_minus_1) << "\n";
        os << "# analytic_car = " << io::fmt(predicted_car) << "\n";
        os << "# peak_width_eff_s = " << io::fmt(rec.peak_width_eff) << "\n";
        io::write_histogram(os, hist);
    });

    if (!a.tags_path.empty()) {
        const auto format = cfg.write_tags == config::TagFormat::none
            ? config::TagFormat::csv : cfg.write_tags;
        with_output(a.tags_path, format == config::TagFormat::binary,
                    [&](std::ostream& os) {
                        if (format == config::TagFormat::binary)
                            io::write_tags_binary(os, s1, s2);
                        else
                            io::write_tags_csv(os, s1, s2);
                    });
    }
}

struct FitArgs {
    Common common;
    std::string input_path;
    std::string kind = "cos2";
};

void run_fit(const FitArgs& a)
{
    config::RunConfig cfg = load(a.common);
    config::validate(cfg, "<cli>");

    fit::XYSeries series;
    if (a.input_path == "-") {
        series = io::read_xy_series(std::cin, "<stdin>");
    } else {
        std::ifstream is(a.input_path);
        if (!is) throw ConfigError("cannot open input file '" + a.input_path + "'");
        series = io::read_xy_series(is, a.input_path);
    }

    with_output(a.common.out_path, false, [&](std::ostream& os) {
        io::write_header(os, cfg);
        os << "# points = " << series.points.size() << "\n";
        if (a.kind == "cos2") {
            const auto f = fit::fit_cos2(series);
            os << "amplitude = " << io::fmt(f.amplitude) << "\n";
            os << "theta0_deg = " << io::fmt(f.theta0_deg) << "\n";
            os << "offset = " << io::fmt(f.offset) << "\n";
            os << "residual_norm = " << io::fmt(f.residual_norm) << "\n";
            os << "theta0_defined = " << (f.theta0_defined ? "true" : "false") << "\n";
        } else if (a.kind == "linear") {
            const auto f = fit::fit_linear(series);
            os << "slope = " << io::fmt(f.slope) << "\n";
            os << "intercept = " << io::fmt(f.intercept) << "\n";
            os << "r_squared = " << io::fmt(f.r_squared) << "\n";
        } else {
            throw ConfigError("--kind must be cos2 or linear");
        }
    });
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pair-generation simulator for non-phase-matched nonlinear microcubes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("spdcube ") + spdcube::version);

    RateArgs rate_args;
    auto* rate_cmd =
        app.add_subcommand("rate", "predicted pair rates and classical efficiencies");
    add_common(rate_cmd, rate_args.common);
    rate_cmd->add_option("--sizes", rate_args.sizes_um, "cube edge lengths in um")
        ->delimiter(',');
    rate_cmd->add_option("--powers", rate_args.powers_mW, "pump powers in mW (power sweep)")
        ->delimiter(',');
    rate_cmd->add_flag("--cubes", rate_args.cubes,
                       "print the bundled measured-cube efficiency table");

    PolarizationArgs pol_args;
    auto* pol_cmd = app.add_subcommand(
        "polarization", "classical second-harmonic yield versus pump polarization");
    add_common(pol_cmd, pol_args.common);
    pol_cmd->add_option("--angles", pol_args.angles_deg, "polarization angles in degrees")
        ->delimiter(',');

    FarFieldArgs ff_args;
    auto* ff_cmd = app.add_subcommand("farfield", "emission pattern of the driven cube");
    add_common(ff_cmd, ff_args.common);
    ff_cmd->add_option("--grid", ff_args.grid, "dipole lattice resolution per axis");
    ff_cmd->add_option("--na", ff_args.na, "collection numerical aperture");
    ff_cmd->add_option("--side", ff_args.side, "pump entry side: glass or air");
    ff_cmd->add_option("--signal", ff_args.signal_nm, "signal wavelength in nm");
    ff_cmd->add_option("--idler", ff_args.idler_nm, "idler wavelength in nm");
    ff_cmd->add_flag("--matrix", ff_args.matrix,
                     "2x2 collected-power matrix over (x, y) analyzer settings");

    HbtArgs hbt_args;
    auto* hbt_cmd =
        app.add_subcommand("hbt", "simulated correlation measurement on the pair source");
    add_common(hbt_cmd, hbt_args.common);
    hbt_cmd->add_option("--pair-rate", hbt_args.pair_rate, "emitted pair rate in Hz");
    hbt_cmd->add_option("--duration", hbt_args.duration, "acquisition time in s");
    hbt_cmd->add_flag("--scan", hbt_args.scan, "sweep a polarizer instead of a single run");
    hbt_cmd->add_option("--angles", hbt_args.angles_deg, "polarizer angles in degrees")
        ->delimiter(',');
    hbt_cmd->add_option("--theta0", hbt_args.theta0_deg,
                        "scan transmission maximum in degrees");
    hbt_cmd->add_option("--tags", hbt_args.tags_path, "also write detector time tags here");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "fit a measured series from CSV");
    add_common(fit_cmd, fit_args.common);
    fit_cmd->add_option("--input", fit_args.input_path, "CSV with x,y[,sigma] columns")
        ->required();
    fit_cmd->add_option("--kind", fit_args.kind, "cos2 (default) or linear");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rate_cmd->parsed()) run_rate(rate_args);
        else if (pol_cmd->parsed()) run_polarization(pol_args);
        else if (ff_cmd->parsed()) run_farfield(ff_args);
        else if (hbt_cmd->parsed()) run_hbt(hbt_args);
        else if (fit_cmd->parsed()) run_fit(fit_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
