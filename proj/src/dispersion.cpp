#include "spdcube/dispersion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spdcube/errors.hpp"

namespace spdcube::disp {

namespace {

double sellmeier_n(const std::array<double, 6>& b, double lambda_um)
{
    const double l2 = lambda_um * lambda_um;
    const double n2 = 1.0 + b[0] * l2 / (l2 - b[1]) + b[2] * l2 / (l2 - b[3])
                    + b[4] * l2 / (l2 - b[5]);
    if (!(n2 > 0.0)) throw OutOfValidityRange("Sellmeier form gives n^2 <= 0");
    return std::sqrt(n2);
}

}  // namespace

double refractive_index(const SellmeierCoeffs& coeffs, double wavelength, Branch branch)
{
    const double um = wavelength * 1e6;
    // the relative slack keeps exact window endpoints valid across the
    // m <-> um conversion rounding
    if (!(um >= coeffs.window_min_um * (1.0 - 1e-12)
          && um <= coeffs.window_max_um * (1.0 + 1e-12))) {
        std::ostringstream msg;
        msg << "wavelength " << um << " um outside Sellmeier validity window ["
            << coeffs.window_min_um << ", " << coeffs.window_max_um << "] um";
        throw OutOfValidityRange(msg.str());
    }
    return sellmeier_n(branch == Branch::ordinary ? coeffs.ordinary : coeffs.extraordinary, um);
}

double index_at_angle(const SellmeierCoeffs& coeffs, double wavelength, double psi_rad)
{
    const double ne = refractive_index(coeffs, wavelength, Branch::extraordinary);
    const double no = refractive_index(coeffs, wavelength, Branch::ordinary);
    const double c = std::cos(psi_rad), s = std::sin(psi_rad);
    return 1.0 / std::sqrt(c * c / (ne * ne) + s * s / (no * no));
}

double index_for_polarization(const SellmeierCoeffs& coeffs, double wavelength,
                              const nlo::Rotation& orientation, const Vec3& polarization)
{
    const Vec3 axis = orientation.apply({0, 0, 1});
    const double c = std::abs(dot(normalized(polarization), axis));
    return index_at_angle(coeffs, wavelength, std::acos(std::min(1.0, c)));
}

double delta_k(double lambda_fund, double n_fund, double n_harm)
{
    return 4.0 * M_PI * (n_harm - n_fund) / lambda_fund;
}

double coherence_length(double dk)
{
    if (dk == 0.0) return std::numeric_limits<double>::infinity();
    return M_PI / std::abs(dk);
}

}
