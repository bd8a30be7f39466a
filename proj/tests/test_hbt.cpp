#include <cmath>

#include <doctest.h>

#include "spdcube/errors.hpp"
#include "spdcube/hbt.hpp"
#include "testutil.hpp"

using namespace spdcube;
using namespace spdcube::hbt;

namespace {

DetectorModel ideal()
{
    return {1.0, 0.0, 0.0, 0.0};
}

TimeTagStream stream_of(std::vector<double> times, std::uint8_t channel, double duration)
{
    TimeTagStream s;
    s.duration = duration;
    for (double t : times) s.tags.push_back({t, channel});
    return s;
}

}  // namespace

TEST_SUITE("hbt")
{
    TEST_CASE("pair generation is deterministic, sorted and Poisson-like")
    {
        const auto a = generate_pairs(1e5, 1.0, 42);
        const auto b = generate_pairs(1e5, 1.0, 42);
        const auto c = generate_pairs(1e5, 1.0, 43);
        CHECK(a.times == b.times);
        CHECK(a.times != c.times);
        REQUIRE(!a.times.empty());
        for (std::size_t i = 1; i < a.times.size(); ++i)
            CHECK(a.times[i] >= a.times[i - 1]);
        CHECK(a.times.front() >= 0.0);
        CHECK(a.times.back() <= 1.0);
        // expected 1e5 events, sigma ~ 316
        CHECK(std::abs(static_cast<double>(a.times.size()) - 1e5) < 5.0 * 316.0);
    }

    TEST_CASE("zero rate emits nothing")
    {
        CHECK(generate_pairs(0.0, 10.0, 1).times.empty());
        CHECK_THROWS_AS(generate_pairs(-1.0, 1.0, 1), SpdcError);
        CHECK_THROWS_AS(generate_pairs(1.0, 0.0, 1), SpdcError);
    }

    TEST_CASE("ideal detectors keep every photon")
    {
        const auto pairs = generate_pairs(1e4, 1.0, 7);
        const auto [s1, s2] = route_and_detect(pairs, ideal(), ideal(), 7, 0.5);
        CHECK(s1.tags.size() + s2.tags.size() == 2 * pairs.times.size());
        for (const auto& t : s1.tags) CHECK(t.channel == 1);
        for (const auto& t : s2.tags) CHECK(t.channel == 2);
    }

    TEST_CASE("splitter ratio one sends everything to channel one")
    {
        const auto pairs = generate_pairs(1e4, 1.0, 7);
        const auto [s1, s2] = route_and_detect(pairs, ideal(), ideal(), 7, 1.0);
        CHECK(s1.tags.size() == 2 * pairs.times.size());
        CHECK(s2.tags.empty());
    }

    TEST_CASE("efficiency thins the stream")
    {
        const auto pairs = generate_pairs(2e4, 1.0, 11);
        DetectorModel half = ideal();
        half.efficiency = 0.5;
        const auto [s1, s2] = route_and_detect(pairs, half, half, 11, 0.5);
        const double kept = static_cast<double>(s1.tags.size() + s2.tags.size());
        const double expected = static_cast<double>(pairs.times.size());  // 2N * 0.5
        CHECK(std::abs(kept - expected) < 5.0 * std::sqrt(expected));
    }

    TEST_CASE("dead time collapses bursts to single clicks")
    {
        const auto pairs = generate_pairs(1e4, 1.0, 13);
        DetectorModel gated = ideal();
        gated.dead_time = 10.0;  // longer than the record
        const auto [s1, s2] = route_and_detect(pairs, gated, gated, 13, 0.5);
        CHECK(s1.tags.size() <= 1);
        CHECK(s2.tags.size() <= 1);
    }

    TEST_CASE("dark counts fill an otherwise silent detector")
    {
        PairEmission none;
        none.duration = 2.0;
        DetectorModel dark = ideal();
        dark.dark_count_rate = 1e4;
        const auto [s1, s2] = route_and_detect(none, dark, ideal(), 5, 0.5);
        CHECK(std::abs(static_cast<double>(s1.tags.size()) - 2e4) < 5.0 * std::sqrt(2e4));
        CHECK(s2.tags.empty());
    }

    TEST_CASE("correlator bins signed delays")
    {
        // s2 clicks 250 ps and -410 ps from the single s1 click
        const auto s1 = stream_of({1.0}, 1, 2.0);
        const auto s2 = stream_of({1.0 + 250e-12, 1.0 - 410e-12}, 2, 2.0);
        const auto h = correlate(s1, s2, 100e-12, 1e-9);
        const std::size_t K = 10;
        REQUIRE(h.counts.size() == 2 * K + 1);
        CHECK(h.counts[K + 3] == 1);  // +250 ps rounds to bin +3
        CHECK(h.counts[K - 4] == 1);  // -410 ps -> bin -4
        std::uint64_t total = 0;
        for (auto c : h.counts) total += c;
        CHECK(total == 2);
        CHECK(h.singles1 == 1);
        CHECK(h.singles2 == 2);
    }

    TEST_CASE("correlator rejects bad binning")
    {
        const auto s = stream_of({1.0}, 1, 2.0);
        CHECK_THROWS_AS(correlate(s, s, 0.0, 1e-9), SpdcError);
        CHECK_THROWS_AS(correlate(s, s, 1e-9, 0.5e-9), SpdcError);
    }

    TEST_CASE("car splits peak, exclusion zone and sidebands")
    {
        CorrelationHistogram h;
        h.bin_width = 100e-12;
        h.window = 1e-9;
        h.duration = 1.0;
        h.counts.assign(21, 10);   // flat floor of 10 per bin
        h.counts[10] = 510;        // peak at zero delay
        h.counts[11] = 60;         // inside the exclusion zone at +1 bin
        const auto r = car(h, 50e-12);  // peak: bin 0 only; exclusion to 100 ps
        CHECK(r.n_peak_bins == 1);
        // bins at +-1 (centers 100 ps) fall inside 2 * halfwidth: excluded
        CHECK(r.n_sideband_bins == 18);
        CHECK(r.peak_counts == 510.0);
        CHECK(r.accidental_mean == 10.0);  // the 60 at +1 bin is excluded, not sideband
        CHECK(rel_err(r.peak_width_eff, 100e-12) < 1e-12);
        CHECK(r.car == 51.0);
        CHECK(r.g2_zero_minus_1 == doctest::Approx(r.car - 1.0).epsilon(1e-12));
        CHECK(r.std_error > 0.0);
    }

    TEST_CASE("a wide peak window swallows the whole histogram")
    {
        CorrelationHistogram h;
        h.bin_width = 100e-12;
        h.window = 1e-9;
        h.counts.assign(21, 1);
        CHECK_THROWS_AS(car(h, 1e-9), InsufficientSidebands);
    }

    TEST_CASE("simulated car matches the Poisson expectation")
    {
        const double rate = 5e4, T = 2.0;
        DetectorModel det{0.8, 100.0, 10e-12, 0.0};
        const auto pairs = generate_pairs(rate, T, 99);
        const auto [s1, s2] = route_and_detect(pairs, det, det, 99, 0.5);
        const auto h = correlate(s1, s2, 100e-12, 50e-9);
        const auto r = car(h, 3.0 * combined_jitter_sigma(det, det));

        const double r1 = static_cast<double>(h.singles1) / T;
        const double r2 = static_cast<double>(h.singles2) / T;
        const double rcc = rate * 0.5 * det.efficiency * det.efficiency;
        const double expected = analytic_car(rcc, r1, r2, r.peak_width_eff);
        CHECK(std::abs(r.car - expected) < 4.0 * r.std_error);
    }

    TEST_CASE("analytic car guards its domain")
    {
        CHECK(analytic_car(0.0, 1e4, 1e4, 1e-10) == 1.0);
        CHECK(rel_err(analytic_car(320.0, 1e4, 1e4, 1e-10), 1.0 + 320.0 / (1e4 * 1e4 * 1e-10))
              < 1e-12);
        CHECK_THROWS_AS(analytic_car(1.0, 0.0, 1e4, 1e-10), SpdcError);
        CHECK_THROWS_AS(analytic_car(1.0, 1e4, 1e4, 0.0), SpdcError);
    }

    TEST_CASE("combined jitter adds in quadrature")
    {
        DetectorModel a = ideal(), b = ideal();
        a.jitter_sigma = 30e-12;
        b.jitter_sigma = 40e-12;
        CHECK(rel_err(combined_jitter_sigma(a, b), 50e-12) < 1e-15);
    }

    TEST_CASE("polarization scan follows the Malus law and stays reproducible")
    {
        ScanSettings s;
        s.det1 = s.det2 = DetectorModel{0.8, 100.0, 10e-12, 0.0};
        s.duration = 0.2;
        const std::vector<double> angles{0, 30, 60, 90, 120, 150};
        const auto run1 = polarization_scan(angles, 2e4, 30.0, s, 77);
        const auto run2 = polarization_scan(angles, 2e4, 30.0, s, 77);
        REQUIRE(run1.size() == angles.size());
        for (std::size_t i = 0; i < run1.size(); ++i) {
            CHECK(run1[i].angle_deg == angles[i]);
            CHECK(run1[i].pair_rate == run2[i].pair_rate);
            CHECK(run1[i].peak_counts == run2[i].peak_counts);
            const double c = std::cos((angles[i] - 30.0) * M_PI / 180.0);
            CHECK(rel_err(run1[i].pair_rate, 2e4 * c * c) < 1e-12);
        }
        // transmission maximum at theta0, extinction 90 degrees away
        CHECK(run1[1].peak_counts > run1[4].peak_counts);
        CHECK(run1[4].pair_rate < 1e-20);
    }
}
