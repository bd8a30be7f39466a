#include "spdcube/efficiency.hpp"

#include <algorithm>
#include <cmath>

#include "spdcube/errors.hpp"

namespace spdcube::efficiency {

double spot_area(const Beam& beam)
{
    const double r = beam.spot_diameter / 2.0;
    return M_PI * r * r;
}

double effective_area(const CubeGeometry& geom, const Beam& beam, AreaConvention conv)
{
    const double spot = spot_area(beam);
    if (conv == AreaConvention::spot) return spot;
    return std::min(spot, geom.edge_length * geom.edge_length);
}

double sinc(double x)
{
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

namespace {

double prefactor(double d_eff_pm_V, double L, double n1, double n2, double n3,
                 double lambda_sq, double area)
{
    const double d = d_eff_pm_V * 1e-12;  // pm/V -> m/V
    return 8.0 * M_PI * M_PI * d * d * L * L
         / (n1 * n2 * n3 * kEpsilon0 * kSpeedOfLight * lambda_sq * area);
}

}  // namespace

double shg_efficiency(const CubeGeometry& geom, const Beam& beam, double d_eff_pm_V,
                      const disp::SellmeierCoeffs& coeffs, AreaConvention conv)
{
    if (!(geom.edge_length > 0.0)) throw SpdcError("cube edge length must be positive");
    const double lam = beam.wavelength;
    const double n_w = disp::index_for_polarization(coeffs, lam, geom.orientation,
                                                   beam.polarization.e);
    const double n_2w = disp::index_for_polarization(coeffs, lam / 2.0, geom.orientation,
                                                    beam.polarization.e);
    const double dk = disp::delta_k(lam, n_w, n_2w);
    const double L = geom.edge_length;
    const double s = sinc(dk * L / 2.0);
    return prefactor(d_eff_pm_V, L, n_2w, n_w * n_w, 1.0, lam * lam,
                     effective_area(geom, beam, conv)) * s * s;
}

double sfg_efficiency(const CubeGeometry& geom, const Beam& beam1, const Beam& beam2,
                      double d_eff_pm_V, const disp::SellmeierCoeffs& coeffs,
                      AreaConvention conv)
{
    if (!(geom.edge_length > 0.0)) throw SpdcError("cube edge length must be positive");
    const double l1 = beam1.wavelength, l2 = beam2.wavelength;
    const double l3 = 1.0 / (1.0 / l1 + 1.0 / l2);
    const double n1 = disp::index_for_polarization(coeffs, l1, geom.orientation,
                                                   beam1.polarization.e);
    const double n2 = disp::index_for_polarization(coeffs, l2, geom.orientation,
                                                   beam2.polarization.e);
    // Sum-frequency polarization direction: symmetrized between the inputs so
    // swapping the beams cannot change the result.
    Vec3 e3 = beam1.polarization.e + beam2.polarization.e;
    if (norm(e3) < 1e-12) e3 = beam1.polarization.e;
    const double n3 = disp::index_for_polarization(coeffs, l3, geom.orientation, e3);
    const double dk = 2.0 * M_PI * (n3 / l3 - n1 / l1 - n2 / l2);
    const double L = geom.edge_length;
    const double s = sinc(dk * L / 2.0);
    return prefactor(d_eff_pm_V, L, n1, n2, n3, l3 * l3,
                     effective_area(geom, beam1, conv)) * s * s;
}

std::vector<OrientationPoint> orientation_sweep(const CubeGeometry& geom, const Beam& beam,
                                                const nlo::Rank3Tensor& tensor,
                                                const disp::SellmeierCoeffs& coeffs,
                                                const std::vector<double>& angles_deg,
                                                AreaConvention conv)
{
    // In-plane basis: lab x projected onto the plane normal to propagation,
    // falling back to y when propagation is along x.
    const Vec3 p = normalized(beam.propagation);
    Vec3 e1 = Vec3{1, 0, 0} - p * dot(Vec3{1, 0, 0}, p);
    if (norm(e1) < 1e-9) e1 = Vec3{0, 1, 0} - p * dot(Vec3{0, 1, 0}, p);
    e1 = normalized(e1);
    const Vec3 e2 = cross(p, e1);

    const auto lab = nlo::rotate_tensor(tensor, geom.orientation);
    const nlo::PolarizationVector c_axis(geom.orientation.apply({0, 0, 1}));
    const double eta_unit = shg_efficiency(geom, beam, 1.0, coeffs, conv);

    std::vector<OrientationPoint> out;
    out.reserve(angles_deg.size());
    for (double a : angles_deg) {
        const double rad = a * M_PI / 180.0;
        const nlo::PolarizationVector e(e1 * std::cos(rad) + e2 * std::sin(rad));
        const double d = nlo::effective_d(lab, c_axis, e, e);
        out.push_back({a, d, eta_unit * d * d});
    }
    return out;
}

}
