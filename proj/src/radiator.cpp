#include "spdcube/radiator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "spdcube/errors.hpp"

namespace spdcube::radiator {

using efficiency::kEpsilon0;
using efficiency::kSpeedOfLight;
using std::complex;

namespace {

complex<double> cis(double x) { return {std::cos(x), std::sin(x)}; }

double cell_sinc(double x) { return efficiency::sinc(x); }

// theta-row boundaries at midpoints between nodes, poles closed.
std::vector<double> theta_bounds(const std::vector<double>& theta)
{
    const int n = static_cast<int>(theta.size());
    std::vector<double> b(n + 1);
    b[0] = 0.0;
    for (int i = 1; i < n; ++i) b[i] = 0.5 * (theta[i - 1] + theta[i]);
    b[n] = M_PI;
    return b;
}

}  // namespace

PlaneWaveField internal_field(const Beam& beam, const CubeGeometry& geom,
                              const disp::SellmeierCoeffs& coeffs, Side side)
{
    const double n_entry = side == Side::glass ? geom.n_below : geom.n_above;
    const double n_cube = disp::index_for_polarization(coeffs, beam.wavelength,
                                                       geom.orientation,
                                                       beam.polarization.e);
    const double t = 2.0 * n_entry / (n_entry + n_cube);
    const double intensity = beam.power / efficiency::spot_area(beam);
    const double e_inc = std::sqrt(2.0 * intensity / (n_entry * kEpsilon0 * kSpeedOfLight));
    const double dir = side == Side::glass ? 1.0 : -1.0;

    PlaneWaveField f;
    f.amplitude = t * e_inc;
    f.polarization = beam.polarization.e;
    f.k = Vec3{0, 0, dir} * (2.0 * M_PI * n_cube / beam.wavelength);
    f.wavelength = beam.wavelength;
    return f;
}

DipoleGrid nonlinear_polarization(const PlaneWaveField& E1, const PlaneWaveField& E2,
                                  const nlo::Rank3Tensor& tensor, int resolution,
                                  const CubeGeometry& geom)
{
    if (resolution < 8) throw SpdcError("dipole grid needs at least 8 cells per edge");
    const double L = geom.edge_length;
    const double h = L / resolution;
    const double vcell = h * h * h;

    // Uniform density amplitude: p0_i = eps0 sum_jk d_ijk e1_j e2_k A1 A2
    // (d entries pm/V -> m/V); all spatial dependence is the drive phase.
    // The tensor arrives in crystal axes and the fields in lab axes, so the
    // contraction uses the tensor rotated by the cube orientation.
    const auto lab = nlo::rotate_tensor(tensor, geom.orientation);
    const complex<double> a12 = E1.amplitude * E2.amplitude;
    CVec3 p0;
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                s += lab.d[i][j][k] * E1.polarization[j] * E2.polarization[k];
        const complex<double> v = kEpsilon0 * s * 1e-12 * a12;
        if (i == 0) p0.x = v;
        else if (i == 1) p0.y = v;
        else p0.z = v;
    }
    const Vec3 k_drive = E1.k + E2.k;

    DipoleGrid grid;
    grid.cell_size = h;
    grid.plane_wave = true;
    grid.density_amplitude = p0;
    grid.k_drive = k_drive;
    grid.cube_edge = L;
    grid.positions.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
    grid.moments.reserve(grid.positions.capacity());
    for (int ix = 0; ix < resolution; ++ix)
        for (int iy = 0; iy < resolution; ++iy)
            for (int iz = 0; iz < resolution; ++iz) {
                const Vec3 r{-L / 2 + (ix + 0.5) * h,
                             -L / 2 + (iy + 0.5) * h,
                             -L / 2 + (iz + 0.5) * h};
                grid.positions.push_back(r);
                grid.moments.push_back(p0 * (vcell * cis(dot(k_drive, r))));
            }
    return grid;
}

FarFieldMap far_field(const DipoleGrid& grid, double lambda_out, const CubeGeometry& geom,
                      int n_theta, int n_phi, bool fast, int threads)
{
    if (grid.positions.empty()) throw SpdcError("dipole grid is empty");
    if (grid.positions.size() != grid.moments.size())
        throw SpdcError("dipole grid positions/moments size mismatch");
    if (n_theta < 2 || n_phi < 1) throw SpdcError("angular resolution too small");

    FarFieldMap map;
    map.n_theta = n_theta;
    map.n_phi = n_phi;
    map.n_upper = geom.n_above;
    map.n_lower = geom.n_below;
    map.theta.resize(n_theta);
    map.phi.resize(n_phi);
    for (int i = 0; i < n_theta; ++i) map.theta[i] = M_PI * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) map.phi[j] = 2.0 * M_PI * j / n_phi;
    map.intensity.assign(static_cast<std::size_t>(n_theta) * n_phi, 0.0);

    const double k0 = 2.0 * M_PI / lambda_out;
    const bool closed_form = fast && grid.plane_wave;

    auto eval_node = [&](int i, int j) {
        const double st = std::sin(map.theta[i]), ct = std::cos(map.theta[i]);
        const Vec3 rhat{st * std::cos(map.phi[j]), st * std::sin(map.phi[j]), ct};
        const double n_h = map.theta[i] <= M_PI / 2 ? map.n_upper : map.n_lower;
        const double kh = k0 * n_h;
        const Vec3 k_out = rhat * kh;

        CVec3 A;
        if (closed_form) {
            const Vec3 K = grid.k_drive - k_out;
            const double L = grid.cube_edge;
            const double f = L * cell_sinc(K.x * L / 2) * L * cell_sinc(K.y * L / 2)
                           * L * cell_sinc(K.z * L / 2);
            A = grid.density_amplitude * complex<double>(f, 0.0);
        } else {
            double form = 1.0;
            if (grid.cell_size > 0.0 && grid.plane_wave) {
                const Vec3 K = grid.k_drive - k_out;
                const double h = grid.cell_size;
                form = cell_sinc(K.x * h / 2) * cell_sinc(K.y * h / 2)
                     * cell_sinc(K.z * h / 2);
            }
            for (std::size_t m = 0; m < grid.positions.size(); ++m)
                A = A + grid.moments[m] * cis(-dot(k_out, grid.positions[m]));
            A = A * complex<double>(form, 0.0);
        }

        // Transverse projection (I - rhat rhat^T) A.
        const complex<double> radial = A.x * rhat.x + A.y * rhat.y + A.z * rhat.z;
        const CVec3 At{A.x - radial * rhat.x, A.y - radial * rhat.y, A.z - radial * rhat.z};

        // dP/dOmega = c k0^4 n_h / (32 pi^2 eps0) |A_t|^2 (W/sr in medium n_h).
        const double pref = kSpeedOfLight * k0 * k0 * k0 * k0 * n_h
                          / (32.0 * M_PI * M_PI * kEpsilon0);
        map.intensity[static_cast<std::size_t>(i) * n_phi + j] = pref * norm2(At);
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        for (int i = 0; i < n_theta; ++i)
            for (int j = 0; j < n_phi; ++j) eval_node(i, j);
    } else {
        // Static row partition; every node is independent and written once,
        // so the result is identical for any thread count.
        std::vector<std::thread> pool;
        const int rows_per = (n_theta + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * rows_per;
            const int hi = std::min(n_theta, lo + rows_per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (int i = lo; i < hi; ++i)
                    for (int j = 0; j < n_phi; ++j) eval_node(i, j);
            });
        }
        for (auto& th : pool) th.join();
    }
    return map;
}

double total_power(const FarFieldMap& map)
{
    const auto b = theta_bounds(map.theta);
    const double dphi = 2.0 * M_PI / map.n_phi;
    double total = 0.0;
    for (int i = 0; i < map.n_theta; ++i) {
        const double w = std::cos(b[i]) - std::cos(b[i + 1]);
        double row = 0.0;
        for (int j = 0; j < map.n_phi; ++j)
            row += map.intensity[static_cast<std::size_t>(i) * map.n_phi + j];
        total += row * w * dphi;
    }
    return total;
}

double collection_fraction(const FarFieldMap& map, double numerical_aperture,
                           Hemisphere hemisphere)
{
    if (!(numerical_aperture > 0.0) || numerical_aperture > 1.0)
        throw InvalidNA("numerical aperture must be in (0, 1]");

    // Cone axis: forward = map.forward_sign * z, backward the opposite.
    const bool about_plus_z = (hemisphere == Hemisphere::forward) == (map.forward_sign > 0);
    const double n_h = about_plus_z ? map.n_upper : map.n_lower;
    const double theta_c = std::asin(numerical_aperture / n_h);

    const auto b = theta_bounds(map.theta);
    const double dphi = 2.0 * M_PI / map.n_phi;
    double inside = 0.0;
    for (int i = 0; i < map.n_theta; ++i) {
        // Row interval measured from the cone axis.
        double lo = about_plus_z ? b[i] : M_PI - b[i + 1];
        double hi = about_plus_z ? b[i + 1] : M_PI - b[i];
        if (lo >= theta_c) continue;
        hi = std::min(hi, theta_c);
        const double w = std::cos(lo) - std::cos(hi);
        double row = 0.0;
        for (int j = 0; j < map.n_phi; ++j)
            row += map.intensity[static_cast<std::size_t>(i) * map.n_phi + j];
        inside += row * w * dphi;
    }
    return inside / total_power(map);
}

double forward_backward_ratio(const FarFieldMap& map)
{
    const auto b = theta_bounds(map.theta);
    const double dphi = 2.0 * M_PI / map.n_phi;
    double upper = 0.0, lower = 0.0;
    for (int i = 0; i < map.n_theta; ++i) {
        double row = 0.0;
        for (int j = 0; j < map.n_phi; ++j)
            row += map.intensity[static_cast<std::size_t>(i) * map.n_phi + j];
        // Split the row straddling the equator exactly at pi/2.
        const double up = std::cos(b[i]) - std::cos(std::min(b[i + 1], M_PI / 2));
        const double dn = std::cos(std::max(b[i], M_PI / 2)) - std::cos(b[i + 1]);
        if (b[i] < M_PI / 2) upper += row * std::max(0.0, up) * dphi;
        if (b[i + 1] > M_PI / 2) lower += row * std::max(0.0, dn) * dphi;
    }
    return map.forward_sign > 0 ? upper / lower : lower / upper;
}

PolarizationMatrix polarization_matrix(const nlo::Rank3Tensor& tensor,
                                       const CubeGeometry& geom,
                                       const disp::SellmeierCoeffs& coeffs,
                                       double lambda_s, double lambda_i,
                                       double numerical_aperture,
                                       Side side, int resolution,
                                       int n_theta, int n_phi)
{
    const double lambda_out = 1.0 / (1.0 / lambda_s + 1.0 / lambda_i);
    const Vec3 basis[2] = {{1, 0, 0}, {0, 1, 0}};

    PolarizationMatrix pm;
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
            Beam bs, bi;
            bs.wavelength = lambda_s;
            bs.polarization = nlo::PolarizationVector(basis[a]);
            bi.wavelength = lambda_i;
            bi.polarization = nlo::PolarizationVector(basis[c]);
            const auto f1 = internal_field(bs, geom, coeffs, side);
            const auto f2 = internal_field(bi, geom, coeffs, side);
            const auto grid = nonlinear_polarization(f1, f2, tensor, resolution, geom);
            FarFieldMap map = far_field(grid, lambda_out, geom, n_theta, n_phi);
            map.forward_sign = side == Side::glass ? 1.0 : -1.0;
            const double total = total_power(map);
            pm.m[a][c] = total > 0.0
                ? collection_fraction(map, numerical_aperture, Hemisphere::forward) * total
                : 0.0;
        }
    return pm;
}

}
