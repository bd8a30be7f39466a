#include "spdcube/pair_rate.hpp"

#include <cmath>

#include "spdcube/errors.hpp"

namespace spdcube::pairrate {

using efficiency::kSpeedOfLight;

const char* to_string(DegenerateConvention c)
{
    return c == DegenerateConvention::half_pump ? "half_pump" : "physical";
}

RatePrediction pair_rate_general(double eta_sfg_per_W, const SpdcConfig& cfg)
{
    if (eta_sfg_per_W < 0.0) throw SpdcError("efficiency must be nonnegative");
    const double lp = cfg.lambda_p, ls = cfg.lambda_s, li = cfg.lambda_i;
    const double bracket = (lp * lp * lp * lp) / (ls * ls * ls * li * li * li)
                         * (kSpeedOfLight * cfg.delta_lambda / (ls * ls));
    RatePrediction p;
    p.eta_per_W = eta_sfg_per_W;
    p.rate_per_power = 2.0 * M_PI * eta_sfg_per_W * bracket * kDimClosure;
    p.pair_rate = p.rate_per_power * cfg.pump_power;
    p.config = cfg;
    return p;
}

RatePrediction pair_rate_degenerate(double eta_shg_per_W, double lambda_p,
                                    double delta_lambda, double pump_power,
                                    DegenerateConvention convention)
{
    if (eta_shg_per_W < 0.0) throw SpdcError("efficiency must be nonnegative");
    const double factor = convention == DegenerateConvention::half_pump ? 256.0 : 1.0 / 256.0;
    const double lp4 = lambda_p * lambda_p * lambda_p * lambda_p;
    RatePrediction p;
    p.eta_per_W = eta_shg_per_W;
    p.rate_per_power = 2.0 * M_PI * eta_shg_per_W * factor
                     * kSpeedOfLight * delta_lambda / lp4 * kDimClosure;
    p.pair_rate = p.rate_per_power * pump_power;
    p.config.lambda_p = lambda_p;
    const double ls = convention == DegenerateConvention::half_pump ? lambda_p / 2.0
                                                                : 2.0 * lambda_p;
    p.config.lambda_s = ls;
    p.config.lambda_i = ls;
    p.config.delta_lambda = delta_lambda;
    p.config.pump_power = pump_power;
    return p;
}

std::vector<SizeRatePoint> size_sweep(const std::vector<double>& sizes,
                                      const SweepSetup& setup)
{
    std::vector<SizeRatePoint> out;
    out.reserve(sizes.size());
    for (double L : sizes) {
        if (!(L > 0.0)) throw SpdcError("sweep sizes must be positive");
        efficiency::CubeGeometry g = setup.geom;
        g.edge_length = L;
        const double eta = efficiency::shg_efficiency(g, setup.shg_beam, setup.d_eff_pm_V,
                                                      setup.coeffs, setup.area);
        out.push_back({L, eta,
                       pair_rate_degenerate(eta, setup.lambda_p, setup.delta_lambda,
                                            setup.pump_power, setup.convention)});
    }
    return out;
}

std::vector<PowerRatePoint> power_sweep(const std::vector<double>& powers,
                                        const SweepSetup& setup)
{
    const double eta = efficiency::shg_efficiency(setup.geom, setup.shg_beam,
                                                  setup.d_eff_pm_V, setup.coeffs, setup.area);
    const RatePrediction base = pair_rate_degenerate(eta, setup.lambda_p, setup.delta_lambda,
                                                     1.0, setup.convention);
    std::vector<PowerRatePoint> out;
    out.reserve(powers.size());
    for (double P : powers) {
        if (P < 0.0) throw SpdcError("pump power must be nonnegative");
        out.push_back({P, base.rate_per_power * P});
    }
    return out;
}

}
