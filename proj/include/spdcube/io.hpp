#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spdcube/config.hpp"
#include "spdcube/efficiency.hpp"
#include "spdcube/fit.hpp"
#include "spdcube/hbt.hpp"
#include "spdcube/pair_rate.hpp"
#include "spdcube/radiator.hpp"

namespace spdcube::io {

// Shortest decimal form that parses back to the same double.  All numeric
// output goes through this so results are byte-stable across runs.
std::string fmt(double value);

// Leading comment block: tool version, seed, and the fully resolved
// configuration, each line prefixed with "# ".  No timestamps.
void write_header(std::ostream& os, const config::RunConfig& cfg);

void write_size_sweep(std::ostream& os, const std::vector<pairrate::SizeRatePoint>& points);
void write_power_sweep(std::ostream& os, const std::vector<pairrate::PowerRatePoint>& points);
void write_orientation_sweep(std::ostream& os,
                             const std::vector<efficiency::OrientationPoint>& points);
void write_polarization_scan(std::ostream& os, const std::vector<hbt::ScanPoint>& points);
void write_histogram(std::ostream& os, const hbt::CorrelationHistogram& hist);
void write_far_field(std::ostream& os, const radiator::FarFieldMap& map);
void write_polarization_matrix(std::ostream& os, const radiator::PolarizationMatrix& pm);

// Merged detector records, ordered by time then channel.
void write_tags_csv(std::ostream& os, const hbt::TimeTagStream& ch1,
                    const hbt::TimeTagStream& ch2);
// Same records packed as little-endian int64 picoseconds + uint8 channel.
void write_tags_binary(std::ostream& os, const hbt::TimeTagStream& ch1,
                       const hbt::TimeTagStream& ch2);
struct PackedTag {
    std::int64_t time_ps;
    std::uint8_t channel;
};
std::vector<PackedTag> read_tags_binary(std::istream& is);

// CSV with columns x,y[,sigma]; '#' lines and a non-numeric first row are
// skipped.
fit::XYSeries read_xy_series(std::istream& is, const std::string& name);

}
