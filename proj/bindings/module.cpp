#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spdcube/config.hpp"
#include "spdcube/dispersion.hpp"
#include "spdcube/efficiency.hpp"
#include "spdcube/fit.hpp"
#include "spdcube/hbt.hpp"
#include "spdcube/pair_rate.hpp"
#include "spdcube/tensor.hpp"
#include "spdcube/version.hpp"

namespace py = pybind11;
using namespace spdcube;

namespace {

using DRows = std::vector<std::vector<double>>;

nlo::ContractedDMatrix matrix_from_rows(const DRows& rows)
{
    if (rows.size() != 3) throw py::value_error("d matrix needs 3 rows");
    nlo::ContractedDMatrix m;
    for (int i = 0; i < 3; ++i) {
        if (rows[i].size() != 6) throw py::value_error("d matrix rows need 6 columns");
        for (int j = 0; j < 6; ++j) m.d[i][j] = rows[i][j];
    }
    return m;
}

fit::XYSeries series_from(const std::vector<double>& x, const std::vector<double>& y,
                          const std::optional<std::vector<double>>& sigma)
{
    if (x.size() != y.size()) throw py::value_error("x and y lengths differ");
    if (sigma && sigma->size() != x.size())
        throw py::value_error("sigma length differs from x");
    fit::XYSeries s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit::XYPoint p;
        p.x = x[i];
        p.y = y[i];
        if (sigma) p.sigma_y = (*sigma)[i];
        s.points.push_back(p);
    }
    return s;
}

disp::SellmeierCoeffs default_coeffs()
{
    return config::RunConfig{}.sellmeier;
}

pairrate::DegenerateConvention convention_from(const std::string& name)
{
    if (name == "half_pump") return pairrate::DegenerateConvention::half_pump;
    if (name == "physical") return pairrate::DegenerateConvention::physical;
    throw py::value_error("convention must be 'half_pump' or 'physical'");
}

py::dict prediction_dict(const pairrate::RatePrediction& p)
{
    py::dict d;
    d["pair_rate"] = p.pair_rate;
    d["rate_per_power"] = p.rate_per_power;
    d["eta_per_W"] = p.eta_per_W;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "pair-generation calculator for non-phase-matched nonlinear microcubes";
    m.attr("__version__") = version;

    m.def("lithium_niobate_d", [] {
        const auto d = nlo::lithium_niobate_d();
        DRows rows(3, std::vector<double>(6));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) rows[i][j] = d.d[i][j];
        return rows;
    }, "3x6 contracted d matrix in pm/V");

    m.def("effective_d",
          [](const DRows& d, const std::array<double, 3>& e_out,
             const std::array<double, 3>& e_in1, const std::array<double, 3>& e_in2) {
              const auto tensor = nlo::expand(matrix_from_rows(d));
              return nlo::effective_d(tensor,
                                      nlo::PolarizationVector({e_out[0], e_out[1], e_out[2]}),
                                      nlo::PolarizationVector({e_in1[0], e_in1[1], e_in1[2]}),
                                      nlo::PolarizationVector({e_in2[0], e_in2[1], e_in2[2]}));
          },
          py::arg("d"), py::arg("e_out"), py::arg("e_in1"), py::arg("e_in2"),
          "contraction of the rank-3 tensor with three unit polarizations, pm/V");

    m.def("ordinary_index",
          [](double lam) {
              return disp::refractive_index(default_coeffs(), lam,
                                            disp::Branch::ordinary);
          },
          py::arg("wavelength"), "bundled congruent-material n_o(lambda [m])");
    m.def("extraordinary_index",
          [](double lam) {
              return disp::refractive_index(default_coeffs(), lam,
                                            disp::Branch::extraordinary);
          },
          py::arg("wavelength"), "bundled congruent-material n_e(lambda [m])");
    m.def("index_at_angle",
          [](double lam, double psi_deg) {
              return disp::index_at_angle(default_coeffs(), lam,
                                          psi_deg * M_PI / 180.0);
          },
          py::arg("wavelength"), py::arg("psi_deg"),
          "index ellipse between n_e (psi = 0) and n_o (psi = 90)");

    m.def("shg_delta_k", &disp::delta_k, py::arg("lambda_fundamental"),
          py::arg("n_fundamental"), py::arg("n_harmonic"),
          "collinear mismatch 4 pi (n_2w - n_w) / lambda_w, rad/m");
    m.def("coherence_length", &disp::coherence_length, py::arg("delta_k"),
          "pi / |delta_k|, infinite when matched");

    m.def("shg_efficiency",
          [](double size, double wavelength, double power, double spot,
             double d_eff_pm_V) {
              efficiency::CubeGeometry geom;
              geom.edge_length = size;
              geom.orientation = nlo::Rotation::optic_axis_on_diagonal(0.0);
              efficiency::Beam beam;
              beam.wavelength = wavelength;
              beam.power = power;
              beam.spot_diameter = spot;
              beam.polarization =
                  nlo::PolarizationVector(geom.orientation.apply({0, 0, 1}));
              return efficiency::shg_efficiency(geom, beam, d_eff_pm_V,
                                                default_coeffs());
          },
          py::arg("size"), py::arg("wavelength"), py::arg("power"), py::arg("spot"),
          py::arg("d_eff_pm_V") = -34.0,
          "axis-aligned plane-wave SHG efficiency per W for a cube of the given edge");

    m.def("pair_rate_general",
          [](double eta, double lambda_p, double lambda_s, double lambda_i,
             double delta_lambda, double power) {
              pairrate::SpdcConfig cfg;
              cfg.lambda_p = lambda_p;
              cfg.lambda_s = lambda_s;
              cfg.lambda_i = lambda_i;
              cfg.delta_lambda = delta_lambda;
              cfg.pump_power = power;
              return prediction_dict(pairrate::pair_rate_general(eta, cfg));
          },
          py::arg("eta"), py::arg("lambda_p"), py::arg("lambda_s"), py::arg("lambda_i"),
          py::arg("delta_lambda"), py::arg("power"));

    m.def("pair_rate_degenerate",
          [](double eta, double lambda_p, double delta_lambda, double power,
             const std::string& convention) {
              return prediction_dict(pairrate::pair_rate_degenerate(
                  eta, lambda_p, delta_lambda, power, convention_from(convention)));
          },
          py::arg("eta"), py::arg("lambda_p"), py::arg("delta_lambda"), py::arg("power"),
          py::arg("convention") = "half_pump");

    m.def("conversion_efficiency", &fit::conversion_efficiency, py::arg("rate"),
          py::arg("power"), py::arg("spot_diameter"), py::arg("cube_size"),
          "rate / (intensity * volume), Hz m / W");

    m.def("fit_cos2",
          [](const std::vector<double>& x, const std::vector<double>& y,
             const std::optional<std::vector<double>>& sigma) {
              const auto f = fit::fit_cos2(series_from(x, y, sigma));
              py::dict d;
              d["amplitude"] = f.amplitude;
              d["theta0_deg"] = f.theta0_deg;
              d["offset"] = f.offset;
              d["residual_norm"] = f.residual_norm;
              d["theta0_defined"] = f.theta0_defined;
              return d;
          },
          py::arg("x"), py::arg("y"), py::arg("sigma") = std::nullopt);

    m.def("fit_linear",
          [](const std::vector<double>& x, const std::vector<double>& y,
             const std::optional<std::vector<double>>& sigma) {
              const auto f = fit::fit_linear(series_from(x, y, sigma));
              py::dict d;
              d["slope"] = f.slope;
              d["intercept"] = f.intercept;
              d["r_squared"] = f.r_squared;
              return d;
          },
          py::arg("x"), py::arg("y"), py::arg("sigma") = std::nullopt);

    m.def("analytic_car", &hbt::analytic_car, py::arg("pair_rate_detected"),
          py::arg("singles_rate1"), py::arg("singles_rate2"), py::arg("width"),
          "1 + R_cc / (R1 R2 width)");

    m.def("run_hbt",
          [](double pair_rate, double duration, std::uint64_t seed, double efficiency,
             double dark_rate, double jitter_sigma, double dead_time, double bin_width,
             double window, std::optional<double> peak_halfwidth) {
              hbt::DetectorModel det{efficiency, dark_rate, jitter_sigma, dead_time};
              const auto pairs = hbt::generate_pairs(pair_rate, duration, seed);
              const auto [s1, s2] = hbt::route_and_detect(pairs, det, det, seed, 0.5);
              const auto hist = hbt::correlate(s1, s2, bin_width, window);
              const double hw = peak_halfwidth
                  ? *peak_halfwidth : 3.0 * hbt::combined_jitter_sigma(det, det);
              const auto rec = hbt::car(hist, hw);
              py::dict d;
              d["car"] = rec.car;
              d["g2_zero_minus_1"] = rec.g2_zero_minus_1;
              d["peak_counts"] = rec.peak_counts;
              d["accidental_mean"] = rec.accidental_mean;
              d["accidental_se"] = rec.accidental_se;
              d["std_error"] = rec.std_error;
              d["singles1"] = hist.singles1;
              d["singles2"] = hist.singles2;
              d["peak_width_eff"] = rec.peak_width_eff;
              return d;
          },
          py::arg("pair_rate"), py::arg("duration"), py::arg("seed") = 1,
          py::arg("efficiency") = 0.8, py::arg("dark_rate") = 100.0,
          py::arg("jitter_sigma") = 10e-12, py::arg("dead_time") = 0.0,
          py::arg("bin_width") = 100e-12, py::arg("window") = 50e-9,
          py::arg("peak_halfwidth") = std::nullopt,
          "one simulated correlation run with identical detectors and a 50:50 split");

    m.def("resolve_config",
          [](const std::string& text) { return config::serialize(config::parse(text)); },
          py::arg("text"), "canonical round-trippable form of a config document");

    m.def("predicted_pair_rate",
          [](const std::string& text) {
              return config::predicted_pair_rate(config::parse(text));
          },
          py::arg("text"), "pair rate implied by a config document, Hz");
}
