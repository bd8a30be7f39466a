#include "spdcube/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdcube/errors.hpp"

namespace spdcube::fit {

namespace {

constexpr double kDeg = M_PI / 180.0;

double weight_of(const XYPoint& p, bool weighted)
{
    if (!weighted) return 1.0;
    const double s = *p.sigma_y;
    if (!(s > 0.0)) throw SpdcError("sigma_y must be positive");
    return 1.0 / (s * s);
}

bool all_weighted(const XYSeries& d)
{
    return !d.points.empty()
        && std::all_of(d.points.begin(), d.points.end(),
                       [](const XYPoint& p) { return p.sigma_y.has_value(); });
}

// Solve the symmetric 3x3 normal equations by Cramer's rule; throws when the
// system is numerically singular.
std::array<double, 3> solve3(const std::array<std::array<double, 3>, 3>& m,
                             const std::array<double, 3>& b)
{
    auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
             - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
             + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double det = det3(m);
    double scale = 0.0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (std::abs(det) <= 1e-12 * scale * scale * scale)
        throw IllConditionedFit("cos^2 design matrix is singular");
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
        auto mc = m;
        for (int r = 0; r < 3; ++r) mc[r][c] = b[r];
        out[c] = det3(mc) / det;
    }
    return out;
}

}  // namespace

Cos2Fit fit_cos2(const XYSeries& data)
{
    const auto& pts = data.points;
    if (pts.size() < 4) throw IllConditionedFit("cos^2 fit needs at least 4 points");
    double xmin = pts[0].x, xmax = pts[0].x;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    if (xmax - xmin < 90.0 - 1e-9)
        throw IllConditionedFit("cos^2 fit needs angles spanning at least 90 degrees");

    const bool weighted = all_weighted(data);
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> b{};
    for (const auto& p : pts) {
        const double w = weight_of(p, weighted);
        const double t = 2.0 * p.x * kDeg;
        const double f[3] = {1.0, std::cos(t), std::sin(t)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += w * f[i] * f[j];
            b[i] += w * f[i] * p.y;
        }
    }
    const auto c = solve3(m, b);

    Cos2Fit fit;
    const double half_amp = std::sqrt(c[1] * c[1] + c[2] * c[2]);
    fit.amplitude = 2.0 * half_amp;
    fit.offset = c[0] - half_amp;
    double yscale = 0.0;
    for (const auto& p : pts) yscale = std::max(yscale, std::abs(p.y));
    if (half_amp <= 1e-12 * std::max(yscale, 1.0)) {
        fit.theta0_defined = false;
        fit.theta0_deg = 0.0;
    } else {
        double th = 0.5 * std::atan2(c[2], c[1]) / kDeg;
        th = std::fmod(th, 180.0);
        if (th < 0.0) th += 180.0;
        fit.theta0_deg = th;
    }
    double rss = 0.0;
    for (const auto& p : pts) {
        const double t = 2.0 * p.x * kDeg;
        const double yhat = c[0] + c[1] * std::cos(t) + c[2] * std::sin(t);
        const double w = weight_of(p, weighted);
        rss += w * (p.y - yhat) * (p.y - yhat);
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

LinearFit fit_linear(const XYSeries& data)
{
    const auto& pts = data.points;
    if (pts.size() < 2) throw IllConditionedFit("linear fit needs at least 2 points");
    const bool weighted = all_weighted(data);
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        const double w = weight_of(p, weighted);
        sw += w;
        sx += w * p.x;
        sy += w * p.y;
        sxx += w * p.x * p.x;
        sxy += w * p.x * p.y;
    }
    const double det = sw * sxx - sx * sx;
    double xscale = 0.0;
    for (const auto& p : pts) xscale = std::max(xscale, std::abs(p.x));
    if (std::abs(det) <= 1e-12 * sw * sw * std::max(xscale * xscale, 1.0))
        throw IllConditionedFit("linear fit needs at least 2 distinct x values");

    LinearFit fit;
    fit.slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    const double ymean = sy / sw;
    double ss_res = 0, ss_tot = 0;
    for (const auto& p : pts) {
        const double w = weight_of(p, weighted);
        const double yhat = fit.slope * p.x + fit.intercept;
        ss_res += w * (p.y - yhat) * (p.y - yhat);
        ss_tot += w * (p.y - ymean) * (p.y - ymean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double conversion_efficiency(double rate, double power, double spot_diameter,
                             double cube_size)
{
    if (!(rate > 0.0) || !(power > 0.0) || !(spot_diameter > 0.0) || !(cube_size > 0.0))
        throw SpdcError("conversion_efficiency needs positive inputs");
    const double r = spot_diameter / 2.0;
    const double intensity = power / (M_PI * r * r);
    const double volume = cube_size * cube_size * cube_size;
    return rate / (intensity * volume);
}

double loss_correction(double raw_rate, const std::vector<double>& transmissions,
                       LossMode mode)
{
    double prod = 1.0;
    for (double t : transmissions) {
        if (!(t > 0.0) || t > 1.0)
            throw InvalidTransmission("transmissions must be in (0, 1]");
        prod *= t;
    }
    if (mode == LossMode::per_photon) prod *= prod;
    return raw_rate / prod;
}

std::vector<EfficiencyRecord> bundled_cube_records()
{
    return {
        {"cube1", 4.1e-6, 37.0, 0.06, 10e-6, 0.0},
        {"cube2", 2.3e-6, 5.5, 0.06, 10e-6, 0.0},
        {"cube3", 3.4e-6, 6.6, 0.06, 10e-6, 0.0},
        {"cube4", 4.0e-6, 80.0, 0.06, 10e-6, 0.0},
    };
}

CubeSummary cube_summary(std::vector<EfficiencyRecord> records)
{
    if (records.empty()) throw SpdcError("cube_summary needs at least one record");
    for (auto& r : records)
        r.conversion_efficiency = conversion_efficiency(r.biphoton_rate, r.pump_power,
                                                        r.spot_diameter, r.size);
    std::ostringstream os;
    os << "cube      size_um  rate_Hz  power_mW  eff_GHz_per_Wm\n";
    for (const auto& r : records) {
        char line[128];
        std::snprintf(line, sizeof line, "%-8s  %7.2f  %7.2f  %8.1f  %14.4f\n",
                      r.cube_id.c_str(), r.size * 1e6, r.biphoton_rate,
                      r.pump_power * 1e3, r.conversion_efficiency * 1e-9);
        os << line;
    }
    return {std::move(records), os.str()};
}

}
