#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spdcube/rng.hpp"

namespace spdcube::hbt {

struct DetectorModel {
    double efficiency = 0.8;       // [0, 1]
    double dark_count_rate = 100;  // Hz
    double jitter_sigma = 10e-12;  // s
    double dead_time = 0.0;        // s
};

struct Tag {
    double time = 0.0;             // s
    std::uint8_t channel = 1;      // 1 or 2
};

struct TimeTagStream {
    std::vector<Tag> tags;         // time-ordered
    double duration = 0.0;         // s
};

// Simultaneous pair emission times of a homogeneous Poisson process.
struct PairEmission {
    std::vector<double> times;     // sorted, in [0, duration]
    double duration = 0.0;         // s
};

struct CorrelationHistogram {
    double bin_width = 100e-12;    // s
    double window = 50e-9;         // s; bins span [-K, K] * bin_width, K = round(window / bin_width)
    std::vector<std::uint64_t> counts;  // size 2K + 1, bin k at index k + K
    std::uint64_t singles1 = 0;
    std::uint64_t singles2 = 0;
    double duration = 0.0;         // s
};

struct CarRecord {
    double peak_counts = 0.0;      // counts in bins with |center| <= peak_halfwidth
    double accidental_mean = 0.0;  // sideband estimate over the same number of bins
    double accidental_se = 0.0;    // standard error of accidental_mean
    double car = 0.0;
    double g2_zero_minus_1 = 0.0;
    double std_error = 0.0;        // peak Poisson + empirical sideband spread
    double peak_width_eff = 0.0;   // n_peak_bins * bin_width, s
    int n_peak_bins = 0;
    int n_sideband_bins = 0;
};

// Substream `pairs` of the seed; deterministic, sorted, expected count
// rate * duration.
PairEmission generate_pairs(double pair_rate, double duration, std::uint64_t seed);

// Each photon of a pair routes independently to channel 1 with probability
// splitter_ratio; a routed photon survives its detector's efficiency and gets
// Gaussian timing jitter; per-channel dark counts are added as independent
// Poisson processes; each channel is time-sorted and then dead-time filtered
// (a tag within dead_time of the previously accepted tag is dropped). Tags
// jittered outside [0, duration] are discarded.
//
// RNG consumption (fixed, documented): substream `route` gives two uniforms
// per pair (photon A, photon B); substream `detect1`/`detect2` gives, per
// photon arriving at that channel, one efficiency uniform and, if accepted,
// two uniforms for the jitter deviate; substreams `dark1`/`dark2` drive the
// dark-count gap sequences.
std::pair<TimeTagStream, TimeTagStream> route_and_detect(const PairEmission& pairs,
                                                         const DetectorModel& det1,
                                                         const DetectorModel& det2,
                                                         std::uint64_t seed,
                                                         double splitter_ratio = 0.5);

// Histogram of delays t2 - t1 with |tau| within the window, via a linear
// two-pointer sweep over the sorted streams. Bin k covers
// [(k - 1/2) bin_width, (k + 1/2) bin_width).
CorrelationHistogram correlate(const TimeTagStream& s1, const TimeTagStream& s2,
                               double bin_width, double window);

// CAR = peak counts / sideband level scaled to the same number of bins.
// Peak bins: |center| <= peak_halfwidth; bins whose inner edge lies within
// 2*peak_halfwidth of zero delay are excluded from the sidebands so jitter
// tails cannot leak in. The sideband uncertainty comes from the empirical
// per-bin spread (pairs that bunch into one channel make the accidentals
// super-Poissonian). Throws InsufficientSidebands when nothing remains.
CarRecord car(const CorrelationHistogram& hist, double peak_halfwidth);

// 1 + R_cc / (R1 R2 width): expected CAR for true detected coincidence rate
// R_cc over an accidental floor of independent singles (width = effective
// peak window, e.g. CarRecord::peak_width_eff).
double analytic_car(double pair_rate_detected, double singles_rate1, double singles_rate2,
                    double width);

struct ScanSettings {
    DetectorModel det1, det2;
    double splitter_ratio = 0.5;
    double duration = 1.0;         // s
    double bin_width = 100e-12;    // s
    double window = 50e-9;         // s
    double peak_halfwidth = 0.0;   // s; <= 0 means 3x combined jitter
};

struct ScanPoint {
    double angle_deg = 0.0;
    double pair_rate = 0.0;        // Hz fed to the simulator
    double peak_counts = 0.0;
    double car = 0.0;
};

// Simulates the HBT experiment per polarizer angle with pair rate
// R_max cos^2(theta - theta0); per-angle seeds derive from the master seed
// via splitmix64 so the scan is reproducible yet decorrelated.
std::vector<ScanPoint> polarization_scan(const std::vector<double>& angles_deg,
                                         double rate_max, double theta0_deg,
                                         const ScanSettings& settings, std::uint64_t seed);

double combined_jitter_sigma(const DetectorModel& det1, const DetectorModel& det2);

}
