#include "spdcube/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spdcube/errors.hpp"
#include "spdcube/io.hpp"

namespace spdcube::config {

namespace {

struct Pos {
    const std::string& file;
    int line;
};

[[noreturn]] void fail(const Pos& at, const std::string& msg)
{
    std::ostringstream os;
    os << at.file << ":" << at.line << ": " << msg;
    throw ConfigError(os.str());
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s)
{
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Splits "<number><unit>" with optional whitespace; unit may be empty.
std::pair<double, std::string> split_number(const std::string& value, const Pos& at)
{
    const char* begin = value.c_str();
    char* end = nullptr;
    const double num = std::strtod(begin, &end);
    if (end == begin) fail(at, "expected a number, got '" + value + "'");
    return {num, trim(std::string(end))};
}

double parse_scaled(const std::string& value, const Pos& at,
                    std::initializer_list<std::pair<const char*, double>> units,
                    const char* kind)
{
    const auto [num, unit] = split_number(value, at);
    if (unit.empty()) return num;
    for (const auto& [name, scale] : units)
        if (unit == name) return num * scale;
    fail(at, std::string("unknown ") + kind + " unit '" + unit + "' in '" + value + "'");
}

double parse_length(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at,
                        {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}},
                        "length");
}

double parse_time(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at,
                        {{"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}},
                        "time");
}

double parse_power(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at, {{"uW", 1e-6}, {"mW", 1e-3}, {"W", 1.0}}, "power");
}

double parse_rate(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at,
                        {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}, "rate");
}

double parse_angle(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at, {{"deg", 1.0}, {"rad", 180.0 / M_PI}}, "angle");
}

// The validity window is stored in um; scaling within um space keeps
// serialize/parse exact ("0.4 um" stays 0.4).
double parse_length_um(const std::string& v, const Pos& at)
{
    return parse_scaled(v, at,
                        {{"nm", 1e-3}, {"um", 1.0}, {"mm", 1e3}, {"cm", 1e4}, {"m", 1e6}},
                        "length");
}

double parse_plain(const std::string& v, const Pos& at)
{
    const auto [num, unit] = split_number(v, at);
    if (!unit.empty()) fail(at, "value '" + v + "' must be a bare number");
    return num;
}

long parse_integer(const std::string& v, const Pos& at)
{
    const double d = parse_plain(v, at);
    const long i = std::lround(d);
    if (d != static_cast<double>(i)) fail(at, "value '" + v + "' must be an integer");
    return i;
}

bool parse_bool(const std::string& v, const Pos& at)
{
    const std::string s = lower(v);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(at, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_length_list(const std::string& v, const Pos& at)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_length(item, at));
    }
    return out;
}

std::array<double, 6> parse_six(const std::string& v, const Pos& at)
{
    std::istringstream ss(v);
    std::array<double, 6> out{};
    for (double& x : out)
        if (!(ss >> x)) fail(at, "expected 6 whitespace-separated numbers");
    std::string rest;
    if (ss >> rest) fail(at, "expected exactly 6 numbers, found extra '" + rest + "'");
    return out;
}

nlo::ContractedDMatrix parse_d_matrix(const std::string& v, const Pos& at)
{
    std::istringstream ss(v);
    nlo::ContractedDMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j)
            if (!(ss >> m.d[i][j]))
                fail(at, "d_matrix needs 18 numbers (3 rows x 6 columns)");
    std::string rest;
    if (ss >> rest) fail(at, "d_matrix has extra trailing content '" + rest + "'");
    return m;
}

void apply_key(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value, const Pos& at)
{
    auto is_auto = [&] { return lower(value) == "auto"; };
    if (section == "crystal") {
        if (key == "preset") cfg.crystal_preset = value;
        else if (key == "d_matrix") cfg.d_matrix = parse_d_matrix(value, at);
        else if (key == "axis") {
            const std::string s = lower(value);
            if (s == "diagonal") cfg.axis = AxisPlacement::diagonal;
            else if (s == "x") cfg.axis = AxisPlacement::x;
            else if (s == "y") cfg.axis = AxisPlacement::y;
            else if (s == "z") cfg.axis = AxisPlacement::z;
            else fail(at, "axis must be diagonal, x, y, or z");
        } else if (key == "axis_azimuth") cfg.axis_azimuth_deg = parse_angle(value, at);
        else fail(at, "unknown key '" + key + "' in [crystal]");
    } else if (section == "optics") {
        if (key == "pump_wavelength") cfg.pump_wavelength = parse_length(value, at);
        else if (key == "signal_wavelength")
            cfg.signal_wavelength = is_auto() ? std::nullopt
                                              : std::optional(parse_length(value, at));
        else if (key == "idler_wavelength")
            cfg.idler_wavelength = is_auto() ? std::nullopt
                                             : std::optional(parse_length(value, at));
        else if (key == "bandwidth") cfg.bandwidth = parse_length(value, at);
        else if (key == "pump_power") cfg.pump_power = parse_power(value, at);
        else if (key == "spot_diameter") cfg.spot_diameter = parse_length(value, at);
        else if (key == "na") cfg.na = parse_plain(value, at);
        else if (key == "pump_polarization")
            cfg.pump_polarization_deg = lower(value) == "aligned"
                ? std::nullopt : std::optional(parse_angle(value, at));
        else fail(at, "unknown key '" + key + "' in [optics]");
    } else if (section == "geometry") {
        if (key == "size") cfg.size = parse_length(value, at);
        else if (key == "sizes") cfg.sizes = parse_length_list(value, at);
        else if (key == "n_above") cfg.n_above = parse_plain(value, at);
        else if (key == "n_below") cfg.n_below = parse_plain(value, at);
        else if (key == "side") {
            const std::string s = lower(value);
            if (s == "glass") cfg.side = radiator::Side::glass;
            else if (s == "air") cfg.side = radiator::Side::air;
            else fail(at, "side must be glass or air");
        } else fail(at, "unknown key '" + key + "' in [geometry]");
    } else if (section == "sellmeier") {
        if (key == "ordinary") cfg.sellmeier.ordinary = parse_six(value, at);
        else if (key == "extraordinary") cfg.sellmeier.extraordinary = parse_six(value, at);
        else if (key == "window_min") cfg.sellmeier.window_min_um = parse_length_um(value, at);
        else if (key == "window_max") cfg.sellmeier.window_max_um = parse_length_um(value, at);
        else fail(at, "unknown key '" + key + "' in [sellmeier]");
    } else if (section == "hbt") {
        if (key == "pair_rate")
            cfg.hbt_pair_rate = is_auto() ? std::nullopt
                                          : std::optional(parse_rate(value, at));
        else if (key == "duration") cfg.hbt_duration = parse_time(value, at);
        else if (key == "efficiency1") cfg.det1.efficiency = parse_plain(value, at);
        else if (key == "efficiency2") cfg.det2.efficiency = parse_plain(value, at);
        else if (key == "dark_rate1") cfg.det1.dark_count_rate = parse_rate(value, at);
        else if (key == "dark_rate2") cfg.det2.dark_count_rate = parse_rate(value, at);
        else if (key == "jitter_sigma1") cfg.det1.jitter_sigma = parse_time(value, at);
        else if (key == "jitter_sigma2") cfg.det2.jitter_sigma = parse_time(value, at);
        else if (key == "dead_time1") cfg.det1.dead_time = parse_time(value, at);
        else if (key == "dead_time2") cfg.det2.dead_time = parse_time(value, at);
        else if (key == "splitter_ratio") cfg.splitter_ratio = parse_plain(value, at);
        else if (key == "bin_width") cfg.bin_width = parse_time(value, at);
        else if (key == "window") cfg.window = parse_time(value, at);
        else if (key == "peak_halfwidth")
            cfg.peak_halfwidth = is_auto() ? std::nullopt
                                           : std::optional(parse_time(value, at));
        else if (key == "write_tags") {
            const std::string s = lower(value);
            if (s == "none") cfg.write_tags = TagFormat::none;
            else if (s == "csv") cfg.write_tags = TagFormat::csv;
            else if (s == "binary") cfg.write_tags = TagFormat::binary;
            else fail(at, "write_tags must be none, csv, or binary");
        } else fail(at, "unknown key '" + key + "' in [hbt]");
    } else if (section == "farfield") {
        if (key == "grid") cfg.farfield_grid = static_cast<int>(parse_integer(value, at));
        else if (key == "theta_nodes") cfg.theta_nodes = static_cast<int>(parse_integer(value, at));
        else if (key == "phi_nodes") cfg.phi_nodes = static_cast<int>(parse_integer(value, at));
        else if (key == "fast") cfg.farfield_fast = parse_bool(value, at);
        else fail(at, "unknown key '" + key + "' in [farfield]");
    } else if (section == "conventions") {
        const std::string s = lower(value);
        if (key == "degenerate_convention") {
            if (s == "half_pump")
                cfg.degenerate_convention = pairrate::DegenerateConvention::half_pump;
            else if (s == "physical")
                cfg.degenerate_convention = pairrate::DegenerateConvention::physical;
            else fail(at, "degenerate_convention must be half_pump or physical");
        } else if (key == "effective_area") {
            if (s == "spot") cfg.effective_area = efficiency::AreaConvention::spot;
            else if (s == "min_spot_facet")
                cfg.effective_area = efficiency::AreaConvention::min_spot_facet;
            else fail(at, "effective_area must be spot or min_spot_facet");
        } else if (key == "loss_mode") {
            if (s == "per_pair") cfg.loss_mode = fit::LossMode::per_pair;
            else if (s == "per_photon") cfg.loss_mode = fit::LossMode::per_photon;
            else fail(at, "loss_mode must be per_pair or per_photon");
        } else fail(at, "unknown key '" + key + "' in [conventions]");
    } else if (section == "run") {
        if (key == "seed") {
            errno = 0;
            char* end = nullptr;
            cfg.seed = std::strtoull(value.c_str(), &end, 10);
            if (errno != 0 || end == value.c_str() || *end != '\0')
                fail(at, "seed must be an unsigned integer");
        } else if (key == "threads") cfg.threads = static_cast<int>(parse_integer(value, at));
        else fail(at, "unknown key '" + key + "' in [run]");
    } else {
        fail(at, "unknown section [" + section + "]");
    }
}

}  // namespace

void validate(const RunConfig& cfg, const std::string& file)
{
    const Pos at{file, 0};
    auto require = [&](bool ok, const char* msg) { if (!ok) fail(at, msg); };
    require(cfg.pump_wavelength > 0, "pump_wavelength must be positive");
    require(!cfg.signal_wavelength || *cfg.signal_wavelength > 0,
            "signal_wavelength must be positive");
    require(!cfg.idler_wavelength || *cfg.idler_wavelength > 0,
            "idler_wavelength must be positive");
    require(cfg.bandwidth > 0, "bandwidth must be positive");
    require(cfg.pump_power >= 0, "pump_power must be nonnegative");
    require(cfg.spot_diameter > 0, "spot_diameter must be positive");
    require(cfg.na > 0 && cfg.na <= 1, "na must be in (0, 1]");
    require(cfg.size > 0, "size must be positive");
    for (double s : cfg.sizes) require(s > 0, "sizes entries must be positive");
    require(cfg.n_above >= 1 && cfg.n_below >= 1, "half-space indices must be >= 1");
    require(cfg.sellmeier.window_min_um > 0
                && cfg.sellmeier.window_max_um > cfg.sellmeier.window_min_um,
            "sellmeier window must be a positive interval");
    require(!cfg.hbt_pair_rate || *cfg.hbt_pair_rate >= 0, "pair_rate must be nonnegative");
    require(cfg.hbt_duration > 0, "duration must be positive");
    for (const auto* d : {&cfg.det1, &cfg.det2}) {
        require(d->efficiency >= 0 && d->efficiency <= 1, "efficiency must be in [0, 1]");
        require(d->dark_count_rate >= 0, "dark_rate must be nonnegative");
        require(d->jitter_sigma >= 0, "jitter_sigma must be nonnegative");
        require(d->dead_time >= 0, "dead_time must be nonnegative");
    }
    require(cfg.splitter_ratio >= 0 && cfg.splitter_ratio <= 1,
            "splitter_ratio must be in [0, 1]");
    require(cfg.bin_width > 0, "bin_width must be positive");
    require(cfg.window >= cfg.bin_width, "window must be at least one bin wide");
    require(!cfg.peak_halfwidth || *cfg.peak_halfwidth >= 0,
            "peak_halfwidth must be nonnegative");
    require(cfg.farfield_grid >= 8, "farfield grid must be at least 8");
    require(cfg.theta_nodes >= 2 && cfg.phi_nodes >= 1, "angular resolution too small");
    require(cfg.threads >= 1, "threads must be at least 1");
    if (cfg.crystal_preset != "lithium_niobate" && cfg.crystal_preset != "none")
        fail(at, "unknown crystal preset '" + cfg.crystal_preset + "'");
    if (cfg.crystal_preset == "none" && !cfg.d_matrix)
        fail(at, "crystal preset 'none' requires an inline d_matrix");
}

RunConfig parse(const std::string& text, const std::string& filename)
{
    RunConfig cfg;
    std::vector<std::string> lines;
    {
        std::istringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) lines.push_back(line);
    }

    std::string section;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Pos at{filename, static_cast<int>(i + 1)};
        std::string raw = lines[i];
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(at, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(at, "empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(at, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(at, "missing key before '='");
        if (section.empty()) fail(at, "key '" + key + "' appears before any [section]");

        // Indented continuation lines extend the value (the d-matrix block).
        while (i + 1 < lines.size()) {
            const std::string& next = lines[i + 1];
            if (next.empty() || (next[0] != ' ' && next[0] != '\t')) break;
            std::string cont = next;
            const std::size_t h2 = cont.find('#');
            if (h2 != std::string::npos) cont = cont.substr(0, h2);
            cont = trim(cont);
            ++i;
            if (!cont.empty()) value += (value.empty() ? "" : " ") + cont;
        }
        if (value.empty()) fail(at, "key '" + key + "' has no value");
        apply_key(cfg, section, key, value, at);
    }
    validate(cfg, filename);
    return cfg;
}

RunConfig load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string serialize(const RunConfig& cfg)
{
    using io::fmt;
    std::ostringstream os;
    os << "[crystal]\n";
    os << "preset = " << cfg.crystal_preset << "\n";
    if (cfg.d_matrix) {
        os << "d_matrix =";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) os << " " << fmt(cfg.d_matrix->d[i][j]);
        os << "\n";
    }
    const char* axis_names[] = {"diagonal", "x", "y", "z"};
    os << "axis = " << axis_names[static_cast<int>(cfg.axis)] << "\n";
    os << "axis_azimuth = " << fmt(cfg.axis_azimuth_deg) << "\n";

    os << "[optics]\n";
    os << "pump_wavelength = " << fmt(cfg.pump_wavelength) << " m\n";
    os << "signal_wavelength = "
       << (cfg.signal_wavelength ? fmt(*cfg.signal_wavelength) + " m" : "auto") << "\n";
    os << "idler_wavelength = "
       << (cfg.idler_wavelength ? fmt(*cfg.idler_wavelength) + " m" : "auto") << "\n";
    os << "bandwidth = " << fmt(cfg.bandwidth) << " m\n";
    os << "pump_power = " << fmt(cfg.pump_power) << " W\n";
    os << "spot_diameter = " << fmt(cfg.spot_diameter) << " m\n";
    os << "na = " << fmt(cfg.na) << "\n";
    os << "pump_polarization = "
       << (cfg.pump_polarization_deg ? fmt(*cfg.pump_polarization_deg) : "aligned") << "\n";

    os << "[geometry]\n";
    os << "size = " << fmt(cfg.size) << " m\n";
    if (!cfg.sizes.empty()) {
        os << "sizes = ";
        for (std::size_t i = 0; i < cfg.sizes.size(); ++i)
            os << (i ? ", " : "") << fmt(cfg.sizes[i]) << " m";
        os << "\n";
    }
    os << "n_above = " << fmt(cfg.n_above) << "\n";
    os << "n_below = " << fmt(cfg.n_below) << "\n";
    os << "side = " << (cfg.side == radiator::Side::glass ? "glass" : "air") << "\n";

    os << "[sellmeier]\n";
    os << "ordinary =";
    for (double v : cfg.sellmeier.ordinary) os << " " << fmt(v);
    os << "\nextraordinary =";
    for (double v : cfg.sellmeier.extraordinary) os << " " << fmt(v);
    os << "\nwindow_min = " << fmt(cfg.sellmeier.window_min_um) << " um\n";
    os << "window_max = " << fmt(cfg.sellmeier.window_max_um) << " um\n";

    os << "[hbt]\n";
    os << "pair_rate = " << (cfg.hbt_pair_rate ? fmt(*cfg.hbt_pair_rate) + " Hz" : "auto")
       << "\n";
    os << "duration = " << fmt(cfg.hbt_duration) << " s\n";
    os << "efficiency1 = " << fmt(cfg.det1.efficiency) << "\n";
    os << "efficiency2 = " << fmt(cfg.det2.efficiency) << "\n";
    os << "dark_rate1 = " << fmt(cfg.det1.dark_count_rate) << " Hz\n";
    os << "dark_rate2 = " << fmt(cfg.det2.dark_count_rate) << " Hz\n";
    os << "jitter_sigma1 = " << fmt(cfg.det1.jitter_sigma) << " s\n";
    os << "jitter_sigma2 = " << fmt(cfg.det2.jitter_sigma) << " s\n";
    os << "dead_time1 = " << fmt(cfg.det1.dead_time) << " s\n";
    os << "dead_time2 = " << fmt(cfg.det2.dead_time) << " s\n";
    os << "splitter_ratio = " << fmt(cfg.splitter_ratio) << "\n";
    os << "bin_width = " << fmt(cfg.bin_width) << " s\n";
    os << "window = " << fmt(cfg.window) << " s\n";
    os << "peak_halfwidth = "
       << (cfg.peak_halfwidth ? fmt(*cfg.peak_halfwidth) + " s" : "auto") << "\n";
    const char* tag_names[] = {"none", "csv", "binary"};
    os << "write_tags = " << tag_names[static_cast<int>(cfg.write_tags)] << "\n";

    os << "[farfield]\n";
    os << "grid = " << cfg.farfield_grid << "\n";
    os << "theta_nodes = " << cfg.theta_nodes << "\n";
    os << "phi_nodes = " << cfg.phi_nodes << "\n";
    os << "fast = " << (cfg.farfield_fast ? "true" : "false") << "\n";

    os << "[conventions]\n";
    os << "degenerate_convention = " << pairrate::to_string(cfg.degenerate_convention)
       << "\n";
    os << "effective_area = "
       << (cfg.effective_area == efficiency::AreaConvention::spot ? "spot" : "min_spot_facet")
       << "\n";
    os << "loss_mode = "
       << (cfg.loss_mode == fit::LossMode::per_pair ? "per_pair" : "per_photon") << "\n";

    os << "[run]\n";
    os << "seed = " << cfg.seed << "\n";
    os << "threads = " << cfg.threads << "\n";
    return os.str();
}

nlo::ContractedDMatrix crystal_matrix(const RunConfig& cfg)
{
    if (cfg.d_matrix) return *cfg.d_matrix;
    if (cfg.crystal_preset == "lithium_niobate") return nlo::lithium_niobate_d();
    throw ConfigError("no d-matrix available (preset '" + cfg.crystal_preset + "')");
}

nlo::Rotation orientation(const RunConfig& cfg)
{
    nlo::Rotation base;
    switch (cfg.axis) {
        case AxisPlacement::diagonal:
            base = nlo::Rotation::optic_axis_on_diagonal(0.0);
            break;
        case AxisPlacement::x: base = nlo::Rotation::z_to({1, 0, 0}); break;
        case AxisPlacement::y: base = nlo::Rotation::z_to({0, 1, 0}); break;
        case AxisPlacement::z: base = nlo::Rotation::identity(); break;
    }
    return nlo::Rotation::about_axis({0, 0, 1}, cfg.axis_azimuth_deg).compose(base);
}

efficiency::CubeGeometry cube_geometry(const RunConfig& cfg)
{
    return {cfg.size, orientation(cfg), cfg.n_above, cfg.n_below};
}

double resolved_signal_wavelength(const RunConfig& cfg)
{
    return cfg.signal_wavelength.value_or(2.0 * cfg.pump_wavelength);
}

double resolved_idler_wavelength(const RunConfig& cfg)
{
    return cfg.idler_wavelength.value_or(2.0 * cfg.pump_wavelength);
}

nlo::PolarizationVector pump_polarization(const RunConfig& cfg)
{
    if (!cfg.pump_polarization_deg)
        return nlo::PolarizationVector(orientation(cfg).apply({0, 0, 1}));
    const double a = *cfg.pump_polarization_deg * M_PI / 180.0;
    return nlo::PolarizationVector(Vec3{std::cos(a), std::sin(a), 0.0});
}

efficiency::Beam shg_beam(const RunConfig& cfg)
{
    efficiency::Beam b;
    b.wavelength = resolved_signal_wavelength(cfg);
    b.power = cfg.pump_power;
    b.spot_diameter = cfg.spot_diameter;
    b.polarization = pump_polarization(cfg);
    b.propagation = cfg.side == radiator::Side::glass ? Vec3{0, 0, 1} : Vec3{0, 0, -1};
    return b;
}

double resolved_d_eff(const RunConfig& cfg)
{
    const auto lab = nlo::rotate_tensor(nlo::expand(crystal_matrix(cfg)), orientation(cfg));
    const auto pol = pump_polarization(cfg);
    return nlo::effective_d(lab, pol, pol, pol);
}

pairrate::SweepSetup sweep_setup(const RunConfig& cfg)
{
    pairrate::SweepSetup s;
    s.geom = cube_geometry(cfg);
    s.shg_beam = shg_beam(cfg);
    s.d_eff_pm_V = resolved_d_eff(cfg);
    s.coeffs = cfg.sellmeier;
    s.area = cfg.effective_area;
    s.lambda_p = cfg.pump_wavelength;
    s.delta_lambda = cfg.bandwidth;
    s.pump_power = cfg.pump_power;
    s.convention = cfg.degenerate_convention;
    return s;
}

double predicted_pair_rate(const RunConfig& cfg)
{
    const auto setup = sweep_setup(cfg);
    const double eta = efficiency::shg_efficiency(setup.geom, setup.shg_beam,
                                                  setup.d_eff_pm_V, setup.coeffs, setup.area);
    return pairrate::pair_rate_degenerate(eta, setup.lambda_p, setup.delta_lambda,
                                          setup.pump_power, setup.convention).pair_rate;
}

double resolved_peak_halfwidth(const RunConfig& cfg)
{
    if (cfg.peak_halfwidth) return *cfg.peak_halfwidth;
    return 3.0 * hbt::combined_jitter_sigma(cfg.det1, cfg.det2);
}

}
