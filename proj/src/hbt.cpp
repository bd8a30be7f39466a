#include "spdcube/hbt.hpp"

#include <algorithm>
#include <cmath>

#include "spdcube/errors.hpp"

namespace spdcube::hbt {

namespace {

std::vector<double> poisson_times(double rate, double duration, Xoshiro256pp& rng)
{
    std::vector<double> times;
    if (rate <= 0.0) return times;
    double t = rng.exponential(rate);
    while (t < duration) {
        times.push_back(t);
        t += rng.exponential(rate);
    }
    return times;
}

void finalize_channel(std::vector<double>& raw, const DetectorModel& det,
                      std::uint8_t channel, double duration, TimeTagStream& out)
{
    std::sort(raw.begin(), raw.end());
    out.duration = duration;
    out.tags.reserve(raw.size());
    double last_accepted = -1e300;
    for (double t : raw) {
        if (t < 0.0 || t > duration) continue;
        if (t - last_accepted < det.dead_time) continue;
        out.tags.push_back({t, channel});
        last_accepted = t;
    }
}

}  // namespace

PairEmission generate_pairs(double pair_rate, double duration, std::uint64_t seed)
{
    if (pair_rate < 0.0) throw SpdcError("pair rate must be nonnegative");
    if (!(duration > 0.0)) throw SpdcError("duration must be positive");
    Xoshiro256pp rng(seed, stream_id::pairs);
    PairEmission out;
    out.duration = duration;
    out.times = poisson_times(pair_rate, duration, rng);
    return out;
}

std::pair<TimeTagStream, TimeTagStream> route_and_detect(const PairEmission& pairs,
                                                         const DetectorModel& det1,
                                                         const DetectorModel& det2,
                                                         std::uint64_t seed,
                                                         double splitter_ratio)
{
    if (splitter_ratio < 0.0 || splitter_ratio > 1.0)
        throw SpdcError("splitter ratio must be in [0, 1]");

    Xoshiro256pp route(seed, stream_id::route);
    Xoshiro256pp detect1(seed, stream_id::detect1);
    Xoshiro256pp detect2(seed, stream_id::detect2);
    Xoshiro256pp dark1(seed, stream_id::dark1);
    Xoshiro256pp dark2(seed, stream_id::dark2);

    std::vector<double> raw1, raw2;
    auto detect = [&](double t, int channel) {
        Xoshiro256pp& rng = channel == 1 ? detect1 : detect2;
        const DetectorModel& det = channel == 1 ? det1 : det2;
        if (rng.u01() >= det.efficiency) return;
        const double jitter = det.jitter_sigma > 0.0 ? det.jitter_sigma * rng.normal() : 0.0;
        (channel == 1 ? raw1 : raw2).push_back(t + jitter);
    };
    for (double t : pairs.times) {
        const int ch_a = route.u01() < splitter_ratio ? 1 : 2;
        const int ch_b = route.u01() < splitter_ratio ? 1 : 2;
        detect(t, ch_a);
        detect(t, ch_b);
    }
    for (double t : poisson_times(det1.dark_count_rate, pairs.duration, dark1))
        raw1.push_back(t);
    for (double t : poisson_times(det2.dark_count_rate, pairs.duration, dark2))
        raw2.push_back(t);

    std::pair<TimeTagStream, TimeTagStream> out;
    finalize_channel(raw1, det1, 1, pairs.duration, out.first);
    finalize_channel(raw2, det2, 2, pairs.duration, out.second);
    return out;
}

CorrelationHistogram correlate(const TimeTagStream& s1, const TimeTagStream& s2,
                               double bin_width, double window)
{
    if (!(bin_width > 0.0)) throw SpdcError("bin width must be positive");
    if (window < bin_width) throw SpdcError("window must be at least one bin wide");

    CorrelationHistogram h;
    h.bin_width = bin_width;
    h.window = window;
    h.singles1 = s1.tags.size();
    h.singles2 = s2.tags.size();
    h.duration = std::max(s1.duration, s2.duration);
    const long K = std::lround(window / bin_width);
    h.counts.assign(static_cast<std::size_t>(2 * K + 1), 0);

    const double edge = (static_cast<double>(K) + 0.5) * bin_width;
    std::size_t start = 0;
    for (const Tag& a : s1.tags) {
        while (start < s2.tags.size() && s2.tags[start].time < a.time - edge) ++start;
        for (std::size_t j = start; j < s2.tags.size(); ++j) {
            const double tau = s2.tags[j].time - a.time;
            if (tau >= edge) break;
            const long k = std::lround(tau / bin_width);
            if (k >= -K && k <= K) ++h.counts[static_cast<std::size_t>(k + K)];
        }
    }
    return h;
}

CarRecord car(const CorrelationHistogram& hist, double peak_halfwidth)
{
    if (!(peak_halfwidth >= 0.0)) throw SpdcError("peak halfwidth must be nonnegative");
    const long K = (static_cast<long>(hist.counts.size()) - 1) / 2;
    const double w = hist.bin_width;

    CarRecord r;
    double sideband_sum = 0.0, sideband_sumsq = 0.0;
    for (long k = -K; k <= K; ++k) {
        const double center = std::abs(k * w);
        const auto c = hist.counts[static_cast<std::size_t>(k + K)];
        if (center <= peak_halfwidth + w * 1e-9) {
            r.peak_counts += static_cast<double>(c);
            ++r.n_peak_bins;
        } else if (center - w / 2.0 > 2.0 * peak_halfwidth + w * 1e-9) {
            sideband_sum += static_cast<double>(c);
            sideband_sumsq += static_cast<double>(c) * static_cast<double>(c);
            ++r.n_sideband_bins;
        }
    }
    if (r.n_sideband_bins == 0)
        throw InsufficientSidebands("no sideband bins outside the peak exclusion zone");

    const double n_side = r.n_sideband_bins;
    const double per_bin = sideband_sum / n_side;
    // sample variance of the per-bin counts; falls back to Poisson when a
    // single bin leaves no spread to estimate
    const double sample_var = r.n_sideband_bins >= 2
        ? std::max(0.0, (sideband_sumsq - n_side * per_bin * per_bin) / (n_side - 1.0))
        : per_bin;
    r.accidental_mean = per_bin * r.n_peak_bins;
    r.accidental_se = r.n_peak_bins * std::sqrt(sample_var / n_side);
    r.peak_width_eff = r.n_peak_bins * w;
    r.car = r.accidental_mean > 0.0 ? r.peak_counts / r.accidental_mean : 0.0;
    r.g2_zero_minus_1 = r.car - 1.0;
    const double acc_rel2 = r.accidental_mean > 0.0
        ? (r.accidental_se * r.accidental_se) / (r.accidental_mean * r.accidental_mean)
        : 1.0 / std::max(sideband_sum, 1.0);
    const double rel2 = 1.0 / std::max(r.peak_counts, 1.0) + acc_rel2;
    r.std_error = r.car * std::sqrt(rel2);
    return r;
}

double analytic_car(double pair_rate_detected, double singles_rate1, double singles_rate2,
                    double width)
{
    if (!(singles_rate1 > 0.0) || !(singles_rate2 > 0.0) || !(width > 0.0))
        throw SpdcError("analytic CAR needs positive singles rates and width");
    return 1.0 + pair_rate_detected / (singles_rate1 * singles_rate2 * width);
}

double combined_jitter_sigma(const DetectorModel& det1, const DetectorModel& det2)
{
    return std::sqrt(det1.jitter_sigma * det1.jitter_sigma
                   + det2.jitter_sigma * det2.jitter_sigma);
}

std::vector<ScanPoint> polarization_scan(const std::vector<double>& angles_deg,
                                         double rate_max, double theta0_deg,
                                         const ScanSettings& settings, std::uint64_t seed)
{
    double hw = settings.peak_halfwidth;
    if (hw <= 0.0) hw = 3.0 * combined_jitter_sigma(settings.det1, settings.det2);

    std::vector<ScanPoint> out;
    out.reserve(angles_deg.size());
    std::uint64_t walker = seed;
    for (double angle : angles_deg) {
        const std::uint64_t sub_seed = splitmix64(walker);
        const double c = std::cos((angle - theta0_deg) * M_PI / 180.0);
        const double rate = rate_max * c * c;
        const auto pairs = generate_pairs(rate, settings.duration, sub_seed);
        const auto streams = route_and_detect(pairs, settings.det1, settings.det2,
                                              sub_seed, settings.splitter_ratio);
        const auto hist = correlate(streams.first, streams.second,
                                    settings.bin_width, settings.window);
        const auto rec = car(hist, hw);
        out.push_back({angle, rate, rec.peak_counts, rec.car});
    }
    return out;
}

}
