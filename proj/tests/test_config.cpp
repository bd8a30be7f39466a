#include <cmath>
#include <string>

#include "doctest.h"
#include "spdcube/config.hpp"
#include "spdcube/errors.hpp"
#include "testutil.hpp"

using namespace spdcube;

namespace {

template <class Fn>
std::string config_error_of(Fn&& fn)
{
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.what();
    }
    FAIL("expected ConfigError");
    return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty input yields the built-in defaults")
{
    const auto cfg = config::parse("");
    const config::RunConfig def;
    CHECK(config::serialize(cfg) == config::serialize(def));
    CHECK(cfg.pump_wavelength == 780e-9);
    CHECK(cfg.crystal_preset == "lithium_niobate");
    CHECK(!cfg.d_matrix);
    CHECK(cfg.axis == config::AxisPlacement::diagonal);
    CHECK(!cfg.signal_wavelength);
    CHECK(!cfg.pump_polarization_deg);
    CHECK(!cfg.hbt_pair_rate);
    CHECK(cfg.degenerate_convention == pairrate::DegenerateConvention::physical);
    CHECK(cfg.effective_area == efficiency::AreaConvention::spot);
    CHECK(cfg.seed == 1);
    CHECK(cfg.threads == 1);
}

TEST_CASE("unit suffixes scale into SI")
{
    const auto cfg = config::parse(
        "[optics]\n"
        "pump_wavelength = 780 nm\n"
        "bandwidth = 0.03 um\n"
        "pump_power = 60 mW\n"
        "spot_diameter = 1e-5 m\n"
        "na = 0.65\n"
        "[geometry]\n"
        "size = 4.1 um\n"
        "[hbt]\n"
        "pair_rate = 2 MHz\n"
        "duration = 500 ms\n"
        "dark_rate1 = 0.1 kHz\n"
        "jitter_sigma1 = 10 ps\n"
        "window = 50 ns\n"
        "[crystal]\n"
        "axis_azimuth = 0.5235987755982988 rad\n");
    CHECK(rel_err(cfg.pump_wavelength, 780e-9) < 1e-15);
    CHECK(rel_err(cfg.bandwidth, 30e-9) < 1e-15);
    CHECK(rel_err(cfg.pump_power, 0.06) < 1e-15);
    CHECK(cfg.spot_diameter == 1e-5);
    CHECK(rel_err(cfg.size, 4.1e-6) < 1e-15);
    CHECK(*cfg.hbt_pair_rate == 2e6);
    CHECK(cfg.hbt_duration == 0.5);
    CHECK(rel_err(cfg.det1.dark_count_rate, 100.0) < 1e-15);
    CHECK(rel_err(cfg.det1.jitter_sigma, 10e-12) < 1e-15);
    CHECK(rel_err(cfg.window, 50e-9) < 1e-15);
    CHECK(rel_err(cfg.axis_azimuth_deg, 30.0) < 1e-12);
}

TEST_CASE("comments, blank lines, and case-insensitive words")
{
    const auto cfg = config::parse(
        "# full-line comment\n"
        "\n"
        "[run]\n"
        "  seed = 42   # trailing comment\n"
        "threads = 3\n"
        "[farfield]\n"
        "fast = No\n"
        "[optics]\n"
        "pump_polarization = ALIGNED\n"
        "[geometry]\n"
        "side = Glass\n");
    CHECK(cfg.seed == 42);
    CHECK(cfg.threads == 3);
    CHECK(!cfg.farfield_fast);
    CHECK(!cfg.pump_polarization_deg);
    CHECK(cfg.side == radiator::Side::glass);
}

TEST_CASE("d-matrix continuation block")
{
    const auto cfg = config::parse(
        "[crystal]\n"
        "preset = none\n"
        "d_matrix =\n"
        "    0 0 0 0 -4.88 -2.58\n"
        "    -2.58 2.58 0 -4.88 0 0   # row 2\n"
        "    -4.88 -4.88 -34 0 0 0\n");
    REQUIRE(cfg.d_matrix);
    CHECK(cfg.d_matrix->d[2][2] == -34.0);
    CHECK(cfg.d_matrix->d[0][4] == -4.88);
    CHECK(nlo::is_c3v_structured(*cfg.d_matrix));
    CHECK(config::crystal_matrix(cfg).d[1][1] == 2.58);
}

TEST_CASE("sizes list and optional sentinels")
{
    const auto cfg = config::parse(
        "[geometry]\n"
        "sizes = 1 um, 2 um, 4.1 um\n"
        "[optics]\n"
        "signal_wavelength = 1550 nm\n"
        "idler_wavelength = auto\n"
        "[hbt]\n"
        "peak_halfwidth = auto\n");
    REQUIRE(cfg.sizes.size() == 3);
    CHECK(rel_err(cfg.sizes[0], 1e-6) < 1e-15);
    CHECK(rel_err(cfg.sizes[2], 4.1e-6) < 1e-15);
    CHECK(rel_err(*cfg.signal_wavelength, 1550e-9) < 1e-15);
    CHECK(!cfg.idler_wavelength);
    CHECK(!cfg.peak_halfwidth);
}

TEST_CASE("parse errors carry file and line")
{
    auto msg = config_error_of([] { config::parse("[nope]\nx = 1\n", "t.cfg"); });
    CHECK(msg.find("t.cfg:2") != std::string::npos);
    CHECK(msg.find("unknown section") != std::string::npos);

    msg = config_error_of([] { config::parse("[run]\nbogus = 1\n", "t.cfg"); });
    CHECK(msg.find("t.cfg:2") != std::string::npos);
    CHECK(msg.find("'bogus'") != std::string::npos);

    msg = config_error_of([] { config::parse("seed = 1\n", "t.cfg"); });
    CHECK(msg.find("t.cfg:1") != std::string::npos);
    CHECK(msg.find("before any [section]") != std::string::npos);

    msg = config_error_of([] { config::parse("[run\n", "t.cfg"); });
    CHECK(msg.find("unterminated") != std::string::npos);

    msg = config_error_of([] { config::parse("[run]\nseed =\n", "t.cfg"); });
    CHECK(msg.find("no value") != std::string::npos);

    msg = config_error_of([] { config::parse("[optics]\npump_wavelength = 780 parsec\n"); });
    CHECK(msg.find("unknown length unit 'parsec'") != std::string::npos);

    msg = config_error_of([] { config::parse("[optics]\nna = 0.65 m\n"); });
    CHECK(msg.find("bare number") != std::string::npos);

    msg = config_error_of([] { config::parse("[optics]\nna = big\n"); });
    CHECK(msg.find("expected a number") != std::string::npos);

    msg = config_error_of([] { config::parse("[farfield]\nfast = maybe\n"); });
    CHECK(msg.find("boolean") != std::string::npos);

    msg = config_error_of([] { config::parse("[farfield]\ngrid = 16.5\n"); });
    CHECK(msg.find("integer") != std::string::npos);

    msg = config_error_of([] { config::parse("[run]\nseed = abc\n"); });
    CHECK(msg.find("seed") != std::string::npos);

    msg = config_error_of([] {
        config::parse("[crystal]\nd_matrix = 1 2 3\n");
    });
    CHECK(msg.find("18 numbers") != std::string::npos);

    msg = config_error_of([] {
        config::parse(
            "[sellmeier]\n"
            "ordinary = 1 2 3 4 5\n");
    });
    CHECK(msg.find("6") != std::string::npos);
}

TEST_CASE("validation rejects out-of-range fields")
{
    auto msg = config_error_of([] { config::parse("[optics]\nna = 1.5\n"); });
    CHECK(msg.find("na must be in") != std::string::npos);

    msg = config_error_of([] { config::parse("[hbt]\nwindow = 50 ps\n"); });
    CHECK(msg.find("at least one bin") != std::string::npos);

    msg = config_error_of([] { config::parse("[crystal]\npreset = none\n"); });
    CHECK(msg.find("requires an inline d_matrix") != std::string::npos);

    msg = config_error_of([] { config::parse("[crystal]\npreset = quartz\n"); });
    CHECK(msg.find("unknown crystal preset") != std::string::npos);

    msg = config_error_of([] { config::parse("[farfield]\ngrid = 4\n"); });
    CHECK(msg.find("at least 8") != std::string::npos);

    CHECK_THROWS_AS(config::parse("[geometry]\nsize = -1 um\n"), ConfigError);
    CHECK_THROWS_AS(config::parse("[hbt]\nefficiency1 = 1.2\n"), ConfigError);
    CHECK_THROWS_AS(config::parse("[hbt]\nsplitter_ratio = -0.1\n"), ConfigError);
    CHECK_THROWS_AS(config::parse("[geometry]\nn_below = 0.5\n"), ConfigError);

    // validate() standalone, for configs mutated after parsing
    config::RunConfig c;
    c.threads = 0;
    const auto standalone = config_error_of([&] { config::validate(c); });
    CHECK(standalone.find("threads") != std::string::npos);
}

TEST_CASE("load_file reports unreadable paths")
{
    CHECK_THROWS_AS(config::load_file("/nonexistent/spdcube.cfg"), ConfigError);
}

TEST_CASE("serialize round-trips a fully customized config")
{
    config::RunConfig c;
    c.crystal_preset = "none";
    c.d_matrix = nlo::lithium_niobate_d();
    c.axis = config::AxisPlacement::y;
    c.axis_azimuth_deg = 15.0;
    c.signal_wavelength = 1550e-9;
    c.idler_wavelength = 1570e-9;
    c.pump_polarization_deg = 30.0;
    c.sizes = {1e-6, 4.1e-6};
    c.side = radiator::Side::air;
    c.hbt_pair_rate = 8965.0;
    c.peak_halfwidth = 1e-10;
    c.write_tags = config::TagFormat::binary;
    c.farfield_fast = false;
    c.degenerate_convention = pairrate::DegenerateConvention::half_pump;
    c.effective_area = efficiency::AreaConvention::min_spot_facet;
    c.loss_mode = fit::LossMode::per_photon;
    c.seed = 123456789012345ull;
    c.threads = 4;

    const std::string text = config::serialize(c);
    const auto rt = config::parse(text, "roundtrip");
    CHECK(config::serialize(rt) == text);
    CHECK(rt.seed == c.seed);
    CHECK(rt.write_tags == config::TagFormat::binary);
    CHECK(*rt.pump_polarization_deg == 30.0);
    CHECK(rt.d_matrix->d[2][2] == -34.0);
    CHECK(rt.loss_mode == fit::LossMode::per_photon);

    // defaults round-trip too
    const config::RunConfig def;
    CHECK(config::serialize(config::parse(config::serialize(def))) == config::serialize(def));
}

TEST_CASE("orientation places the optic axis at the requested azimuth")
{
    config::RunConfig c;
    c.axis_azimuth_deg = 30.0;
    const Vec3 a = config::orientation(c).apply({0, 0, 1});
    const double s23 = std::sqrt(2.0 / 3.0);
    CHECK(rel_err(a.x, s23 * std::cos(M_PI / 6)) < 1e-12);
    CHECK(rel_err(a.y, s23 * std::sin(M_PI / 6)) < 1e-12);
    CHECK(rel_err(a.z, 1.0 / std::sqrt(3.0)) < 1e-12);

    // aligned pump polarization tracks the optic axis
    const auto pol = config::pump_polarization(c);
    CHECK(std::abs(dot(pol.e, a) - 1.0) < 1e-12);

    // explicit polarization angle lives in the lab xy plane
    c.pump_polarization_deg = 45.0;
    const auto p45 = config::pump_polarization(c);
    CHECK(rel_err(p45.e.x, std::sqrt(0.5)) < 1e-12);
    CHECK(rel_err(p45.e.y, std::sqrt(0.5)) < 1e-12);
    CHECK(p45.e.z == 0.0);

    c.axis = config::AxisPlacement::x;
    c.axis_azimuth_deg = 0.0;
    const Vec3 ax = config::orientation(c).apply({0, 0, 1});
    CHECK(rel_err(ax.x, 1.0) < 1e-12);

    c.axis = config::AxisPlacement::z;
    const Vec3 az = config::orientation(c).apply({0, 0, 1});
    CHECK(rel_err(az.z, 1.0) < 1e-12);
}

TEST_CASE("aligned d_eff is the d33 coefficient in any orientation")
{
    config::RunConfig c;
    CHECK(rel_err(config::resolved_d_eff(c), -34.0) < 1e-12);
    c.axis_azimuth_deg = 137.0;
    CHECK(rel_err(config::resolved_d_eff(c), -34.0) < 1e-12);
    c.axis = config::AxisPlacement::z;
    c.axis_azimuth_deg = 0.0;
    CHECK(rel_err(config::resolved_d_eff(c), -34.0) < 1e-12);

    // optic axis along lab x, pump along lab y: the contraction lands on d22
    c.axis = config::AxisPlacement::x;
    c.pump_polarization_deg = 90.0;
    CHECK(rel_err(config::resolved_d_eff(c), 2.58) < 1e-12);
}

TEST_CASE("resolved wavelengths default to the degenerate pair wavelength")
{
    config::RunConfig c;
    CHECK(config::resolved_signal_wavelength(c) == 2.0 * c.pump_wavelength);
    CHECK(config::resolved_idler_wavelength(c) == 2.0 * c.pump_wavelength);

    // the rate-formula convention does not move the resolved wavelengths
    c.degenerate_convention = pairrate::DegenerateConvention::half_pump;
    CHECK(config::resolved_signal_wavelength(c) == 2.0 * c.pump_wavelength);

    c.signal_wavelength = 1310e-9;
    CHECK(config::resolved_signal_wavelength(c) == 1310e-9);
    CHECK(config::resolved_idler_wavelength(c) == 2.0 * c.pump_wavelength);
}

TEST_CASE("shg beam and cube geometry resolution")
{
    config::RunConfig c;
    const auto b = config::shg_beam(c);
    CHECK(b.wavelength == 2.0 * c.pump_wavelength);
    CHECK(b.power == c.pump_power);
    CHECK(b.spot_diameter == c.spot_diameter);
    CHECK(b.propagation.z == 1.0);  // glass-side illumination travels +z

    c.side = radiator::Side::air;
    CHECK(config::shg_beam(c).propagation.z == -1.0);

    const auto g = config::cube_geometry(c);
    CHECK(g.edge_length == c.size);
    CHECK(g.n_above == 1.0);
    CHECK(g.n_below == 1.5);
}

TEST_CASE("predicted pair rate matches the frozen default-cube value")
{
    config::RunConfig c;  // 4 um cube, aligned pump, physical convention
    CHECK(rel_err(config::predicted_pair_rate(c), 8965.212546394234) < 1e-9);

    c.degenerate_convention = pairrate::DegenerateConvention::half_pump;
    CHECK(rel_err(config::predicted_pair_rate(c), 8965.212546394234 * 65536.0) < 1e-9);
}

TEST_CASE("peak halfwidth defaults to three combined jitter sigmas")
{
    config::RunConfig c;
    CHECK(rel_err(config::resolved_peak_halfwidth(c), 3.0 * std::sqrt(2.0) * 10e-12) < 1e-12);
    c.peak_halfwidth = 7e-11;
    CHECK(config::resolved_peak_halfwidth(c) == 7e-11);
}

}
