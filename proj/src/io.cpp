#include "spdcube/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "spdcube/errors.hpp"
#include "spdcube/version.hpp"

namespace spdcube::io {

std::string fmt(double value)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const config::RunConfig& cfg)
{
    os << "# spdcube " << version << "\n";
    std::istringstream cfg_lines(config::serialize(cfg));
    std::string line;
    while (std::getline(cfg_lines, line)) os << "# cfg " << line << "\n";
}

void write_size_sweep(std::ostream& os, const std::vector<pairrate::SizeRatePoint>& points)
{
    os << "size_m,eta_per_W,pair_rate_Hz,rate_per_power_Hz_per_W\n";
    for (const auto& p : points)
        os << fmt(p.size) << "," << fmt(p.eta_per_W) << "," << fmt(p.prediction.pair_rate)
           << "," << fmt(p.prediction.rate_per_power) << "\n";
}

void write_power_sweep(std::ostream& os, const std::vector<pairrate::PowerRatePoint>& points)
{
    os << "power_W,pair_rate_Hz\n";
    for (const auto& p : points) os << fmt(p.power) << "," << fmt(p.pair_rate) << "\n";
}

void write_orientation_sweep(std::ostream& os,
                             const std::vector<efficiency::OrientationPoint>& points)
{
    os << "angle_deg,d_eff_pm_V,eta_per_W\n";
    for (const auto& p : points)
        os << fmt(p.angle_deg) << "," << fmt(p.d_eff_pm_V) << "," << fmt(p.eta_per_W)
           << "\n";
}

void write_polarization_scan(std::ostream& os, const std::vector<hbt::ScanPoint>& points)
{
    os << "angle_deg,pair_rate_Hz,peak_counts,car\n";
    for (const auto& p : points)
        os << fmt(p.angle_deg) << "," << fmt(p.pair_rate) << "," << fmt(p.peak_counts)
           << "," << fmt(p.car) << "\n";
}

void write_histogram(std::ostream& os, const hbt::CorrelationHistogram& hist)
{
    os << "delay_s,coincidences\n";
    const long k_max = static_cast<long>(hist.counts.size() / 2);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double delay = (static_cast<long>(i) - k_max) * hist.bin_width;
        os << fmt(delay) << "," << fmt(hist.counts[i]) << "\n";
    }
}

void write_far_field(std::ostream& os, const radiator::FarFieldMap& map)
{
    os << "theta_deg,phi_deg,intensity_W_per_sr\n";
    for (int i = 0; i < map.n_theta; ++i)
        for (int j = 0; j < map.n_phi; ++j)
            os << fmt(map.theta[i] * 180.0 / M_PI) << "," << fmt(map.phi[j] * 180.0 / M_PI)
               << "," << fmt(map.intensity[static_cast<std::size_t>(i) * map.n_phi + j])
               << "\n";
}

void write_polarization_matrix(std::ostream& os, const radiator::PolarizationMatrix& pm)
{
    os << "signal_pol,idler_pol,collected_power_W\n";
    const char* axes[] = {"x", "y"};
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            os << axes[a] << "," << axes[c] << "," << fmt(pm.m[a][c]) << "\n";
}

namespace {

std::vector<PackedTag> merge_tags(const hbt::TimeTagStream& ch1, const hbt::TimeTagStream& ch2)
{
    std::vector<PackedTag> all;
    all.reserve(ch1.tags.size() + ch2.tags.size());
    for (const auto& t : ch1.tags)
        all.push_back({static_cast<std::int64_t>(std::llround(t.time * 1e12)), 1});
    for (const auto& t : ch2.tags)
        all.push_back({static_cast<std::int64_t>(std::llround(t.time * 1e12)), 2});
    std::sort(all.begin(), all.end(), [](const PackedTag& a, const PackedTag& b) {
        return a.time_ps != b.time_ps ? a.time_ps < b.time_ps : a.channel < b.channel;
    });
    return all;
}

}  // namespace

void write_tags_csv(std::ostream& os, const hbt::TimeTagStream& ch1,
                    const hbt::TimeTagStream& ch2)
{
    os << "time_ps,channel\n";
    for (const auto& t : merge_tags(ch1, ch2))
        os << t.time_ps << "," << static_cast<int>(t.channel) << "\n";
}

void write_tags_binary(std::ostream& os, const hbt::TimeTagStream& ch1,
                       const hbt::TimeTagStream& ch2)
{
    for (const auto& t : merge_tags(ch1, ch2)) {
        unsigned char rec[9];
        std::uint64_t u = static_cast<std::uint64_t>(t.time_ps);
        for (int b = 0; b < 8; ++b) rec[b] = static_cast<unsigned char>(u >> (8 * b));
        rec[8] = t.channel;
        os.write(reinterpret_cast<const char*>(rec), sizeof(rec));
    }
}

std::vector<PackedTag> read_tags_binary(std::istream& is)
{
    std::vector<PackedTag> out;
    unsigned char rec[9];
    while (is.read(reinterpret_cast<char*>(rec), sizeof(rec))) {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(rec[b]) << (8 * b);
        out.push_back({static_cast<std::int64_t>(u), rec[8]});
    }
    return out;
}

fit::XYSeries read_xy_series(std::istream& is, const std::string& name)
{
    fit::XYSeries series;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 2) {
            throw ConfigError(name + ":" + std::to_string(line_no)
                              + ": expected at least two comma-separated columns");
        }
        std::vector<double> values;
        bool numeric = true;
        for (const auto& f : fields) {
            const char* begin = f.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
            if (end == begin || *end != '\0') {
                numeric = false;
                break;
            }
            values.push_back(v);
        }
        if (!numeric) {
            if (series.points.empty()) continue;  // header row
            throw ConfigError(name + ":" + std::to_string(line_no)
                              + ": non-numeric data row");
        }
        fit::XYPoint p;
        p.x = values[0];
        p.y = values[1];
        if (values.size() > 2) p.sigma_y = values[2];
        series.points.push_back(p);
    }
    return series;
}

}
