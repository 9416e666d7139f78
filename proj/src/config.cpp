#include "v2n/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "v2n/errors.hpp"
#include "v2n/format.hpp"

namespace v2n {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why)
{
    throw ConfigError(std::string(key) + ": " + std::string(why) + " (got '" + std::string(value) + "')");
}

double to_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        bad_value(key, text, "expected a finite number");
    }
    return v;
}

long long to_int(std::string_view key, std::string_view text)
{
    const double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        bad_value(key, text, "expected an integer");
    }
    return static_cast<long long>(v);
}

std::uint64_t to_u64(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        bad_value(key, text, "expected an unsigned 64-bit integer");
    }
    return v;
}

bool to_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "on" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "off" || text == "no" || text == "0") {
        return false;
    }
    bad_value(key, text, "expected true/false or on/off");
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

// "10,20,30" or "start:stop:step" (inclusive).
std::vector<double> to_double_list(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            bad_value(key, text, "range must be start:stop:step");
        }
        const double a = to_double(key, parts[0]);
        const double b = to_double(key, parts[1]);
        const double step = to_double(key, parts[2]);
        if (!(step > 0.0) || b < a) {
            bad_value(key, text, "range needs step > 0 and stop >= start");
        }
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i) {
            out.push_back(a + static_cast<double>(i) * step);
        }
        return out;
    }
    for (auto part : split(text, ',')) {
        out.push_back(to_double(key, part));
    }
    if (out.empty()) {
        bad_value(key, text, "empty list");
    }
    return out;
}

std::vector<ArrayPair> to_array_list(std::string_view key, std::string_view text)
{
    std::vector<ArrayPair> out;
    for (auto part : split(trim(text), ',')) {
        const auto x = part.find('x');
        if (x == std::string_view::npos) {
            bad_value(key, part, "expected NxM");
        }
        out.push_back({static_cast<int>(to_int(key, part.substr(0, x))),
                       static_cast<int>(to_int(key, part.substr(x + 1)))});
    }
    return out;
}

std::string join(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + format_double(xs[i]);
    }
    return s;
}

std::string join(const std::vector<ArrayPair>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + std::to_string(xs[i].vehicle) + "x" + std::to_string(xs[i].rsu);
    }
    return s;
}

std::string los_mode_name(LosMode m)
{
    switch (m) {
    case LosMode::AlwaysLos:
        return "los";
    case LosMode::AlwaysNlos:
        return "nlos";
    case LosMode::Stochastic:
        break;
    }
    return "stochastic";
}

LosMode to_los_mode(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "stochastic") {
        return LosMode::Stochastic;
    }
    if (text == "los") {
        return LosMode::AlwaysLos;
    }
    if (text == "nlos") {
        return LosMode::AlwaysNlos;
    }
    bad_value(key, text, "expected stochastic, los or nlos");
}

std::string source_name(TraceSource s)
{
    switch (s) {
    case TraceSource::File:
        return "file";
    case TraceSource::Static:
        return "static";
    case TraceSource::Synthetic:
        break;
    }
    return "synthetic";
}

TraceSource to_source(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "synthetic") {
        return TraceSource::Synthetic;
    }
    if (text == "file") {
        return TraceSource::File;
    }
    if (text == "static") {
        return TraceSource::Static;
    }
    bad_value(key, text, "expected synthetic, file or static");
}

struct Entry {
    ConfigKey key;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

#define V2N_DOUBLE(NAME, FIELD, HELP)                                                                        \
    Entry{{NAME, HELP, true}, [](SimConfig& c, std::string_view v) { c.FIELD = to_double(NAME, v); },        \
          [](const SimConfig& c) { return format_double(c.FIELD); }}
#define V2N_BOOL(NAME, FIELD, HELP)                                                                          \
    Entry{{NAME, HELP, true}, [](SimConfig& c, std::string_view v) { c.FIELD = to_bool(NAME, v); },          \
          [](const SimConfig& c) { return std::string(c.FIELD ? "true" : "false"); }}
#define V2N_INT(NAME, FIELD, HELP)                                                                           \
    Entry{{NAME, HELP, true},                                                                                \
          [](SimConfig& c, std::string_view v) { c.FIELD = static_cast<decltype(c.FIELD)>(to_int(NAME, v)); }, \
          [](const SimConfig& c) { return std::to_string(c.FIELD); }}

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> table = {
        // deployment
        V2N_DOUBLE("area_side_m", area_side_m, "side of the square simulation area [m]"),
        V2N_DOUBLE("lambda_lte", lambda_lte, "LTE RSU density [RSU/km^2]"),
        V2N_DOUBLE("lambda_mmw", lambda_mmw, "mmWave RSU density [RSU/km^2]"),
        V2N_BOOL("fixed_lte_layout", fixed_lte_layout, "reuse one LTE layout for all drops"),
        V2N_BOOL("lte_nonempty", lte_nonempty, "redraw LTE layouts that contain no RSU"),
        // radios
        V2N_DOUBLE("tx_power_mmw_dbm", mmw_radio.tx_power_dbm.value, "mmWave TX power [dBm]"),
        V2N_DOUBLE("tx_power_lte_dbm", lte_radio.tx_power_dbm.value, "LTE TX power [dBm]"),
        V2N_DOUBLE("bandwidth_mmw_hz", mmw_radio.bandwidth_hz, "mmWave bandwidth [Hz]"),
        V2N_DOUBLE("bandwidth_lte_hz", lte_radio.bandwidth_hz, "LTE bandwidth [Hz]"),
        V2N_DOUBLE("carrier_mmw_hz", mmw_radio.carrier_hz, "mmWave carrier [Hz]"),
        V2N_DOUBLE("carrier_lte_hz", lte_radio.carrier_hz, "LTE carrier [Hz]"),
        Entry{{"noise_figure_db", "receiver noise figure, both radios [dB]", true},
              [](SimConfig& c, std::string_view v) {
                  const double nf = to_double("noise_figure_db", v);
                  c.mmw_radio.noise_figure_db = {nf};
                  c.lte_radio.noise_figure_db = {nf};
              },
              [](const SimConfig& c) { return format_double(c.mmw_radio.noise_figure_db.value); }},
        Entry{{"outage_threshold_db", "SNR below which a sample counts as outage [dB]", true},
              [](SimConfig& c, std::string_view v) {
                  const double th = to_double("outage_threshold_db", v);
                  c.mmw_radio.outage_threshold_db = {th};
                  c.lte_radio.outage_threshold_db = {th};
              },
              [](const SimConfig& c) { return format_double(c.mmw_radio.outage_threshold_db.value); }},
        V2N_BOOL("sinr_mode", sinr_mode, "include mmWave inter-RSU interference"),
        // channel
        V2N_DOUBLE("a_los", channel.a_los_per_m, "mmWave LOS decay [1/m]"),
        V2N_DOUBLE("sigma_los_db", channel.sigma_los_db, "mmWave LOS shadowing std [dB]"),
        V2N_DOUBLE("sigma_nlos_db", channel.sigma_nlos_db, "mmWave NLOS shadowing std [dB]"),
        V2N_DOUBLE("mmw_pl_los_intercept_db", channel.mmw_los.intercept_db, "mmWave LOS intercept [dB]"),
        V2N_DOUBLE("mmw_pl_los_exponent", channel.mmw_los.slope_db, "mmWave LOS path-loss exponent"),
        V2N_DOUBLE("mmw_pl_nlos_intercept_db", channel.mmw_nlos.intercept_db, "mmWave NLOS intercept [dB]"),
        V2N_DOUBLE("mmw_pl_nlos_exponent", channel.mmw_nlos.slope_db, "mmWave NLOS path-loss exponent"),
        V2N_DOUBLE("lte_pl_los_intercept_db", channel.lte_los.intercept_db, "LTE LOS intercept [dB]"),
        V2N_DOUBLE("lte_pl_los_slope_db", channel.lte_los.slope_db, "LTE LOS slope [dB/decade of km]"),
        V2N_DOUBLE("lte_pl_nlos_intercept_db", channel.lte_nlos.intercept_db, "LTE NLOS intercept [dB]"),
        V2N_DOUBLE("lte_pl_nlos_slope_db", channel.lte_nlos.slope_db, "LTE NLOS slope [dB/decade of km]"),
        V2N_DOUBLE("los_corr_m", channel.los_corr_m, "LOS-state decorrelation distance [m]"),
        V2N_DOUBLE("shadow_corr_m", channel.shadow_corr_m, "shadowing decorrelation distance [m]"),
        V2N_DOUBLE("d_min_m", channel.d_min_m, "minimum distance used in path-loss laws [m]"),
        Entry{{"lte_los_unit", "distance unit fed to the LTE LOS formula: m | km", true},
              [](SimConfig& c, std::string_view v) {
                  v = trim(v);
                  if (v == "m") {
                      c.channel.lte_los_unit = DistanceUnit::Meters;
                  } else if (v == "km") {
                      c.channel.lte_los_unit = DistanceUnit::Kilometers;
                  } else {
                      bad_value("lte_los_unit", v, "expected m or km");
                  }
              },
              [](const SimConfig& c) {
                  return std::string(c.channel.lte_los_unit == DistanceUnit::Meters ? "m" : "km");
              }},
        Entry{{"lte_los_mode", "stochastic | los | nlos", true},
              [](SimConfig& c, std::string_view v) { c.channel.lte_los_mode = to_los_mode("lte_los_mode", v); },
              [](const SimConfig& c) { return los_mode_name(c.channel.lte_los_mode); }},
        Entry{{"mmw_los_mode", "stochastic | los | nlos", true},
              [](SimConfig& c, std::string_view v) { c.channel.mmw_los_mode = to_los_mode("mmw_los_mode", v); },
              [](const SimConfig& c) { return los_mode_name(c.channel.mmw_los_mode); }},
        V2N_BOOL("lte_fading", channel.lte_fading, "Rayleigh fading on LTE links"),
        V2N_BOOL("mmw_fading", channel.mmw_fading, "Rayleigh fading on mmWave links"),
        // antennas and tracking
        V2N_INT("n_vehicle", arrays.vehicle, "vehicle array elements N"),
        V2N_INT("m_rsu", arrays.rsu, "mmWave RSU array elements M"),
        V2N_DOUBLE("side_lobe_drop_db", antenna.side_lobe_drop_db, "main-to-side lobe gap [dB]"),
        V2N_DOUBLE("side_lobe_floor_dbi", antenna.side_lobe_floor_dbi, "lowest side-lobe gain [dBi]"),
        V2N_DOUBLE("beamwidth_coeff_deg", antenna.beamwidth_coeff_deg, "beamwidth = coeff/sqrt(elements) [deg]"),
        V2N_DOUBLE("t_tr_s", t_tr_s, "beam tracking period [s], 0 = perfect alignment"),
        // mobility
        Entry{{"trace_source", "synthetic | file | static", true},
              [](SimConfig& c, std::string_view v) { c.trace_source = to_source("trace_source", v); },
              [](const SimConfig& c) { return source_name(c.trace_source); }},
        Entry{{"trace_path", "trace CSV used when trace_source = file", true},
              [](SimConfig& c, std::string_view v) { c.trace_path = std::string(trim(v)); },
              [](const SimConfig& c) { return c.trace_path; }},
        Entry{{"trace_vehicle", "vehicle id to keep from a multi-vehicle trace", true},
              [](SimConfig& c, std::string_view v) { c.trace_vehicle = std::string(trim(v)); },
              [](const SimConfig& c) { return c.trace_vehicle; }},
        V2N_DOUBLE("static_x_m", static_position.x, "vehicle x when trace_source = static [m]"),
        V2N_DOUBLE("static_y_m", static_position.y, "vehicle y when trace_source = static [m]"),
        V2N_DOUBLE("dt_s", trip.dt_s, "simulation time step [s]"),
        V2N_DOUBLE("duration_s", trip.duration_s, "trace duration for synthetic/static traces [s]"),
        V2N_INT("grid_blocks", trip.grid.blocks, "synthetic grid blocks per side"),
        V2N_DOUBLE("grid_block_m", trip.grid.block_m, "synthetic grid block length [m]"),
        V2N_DOUBLE("grid_origin_x_m", trip.grid.origin.x, "synthetic grid origin x [m]"),
        V2N_DOUBLE("grid_origin_y_m", trip.grid.origin.y, "synthetic grid origin y [m]"),
        V2N_DOUBLE("v_max_mps", trip.v_max_mps, "synthetic speed cap [m/s]"),
        V2N_DOUBLE("accel_mps2", trip.accel_mps2, "synthetic acceleration/braking [m/s^2]"),
        V2N_DOUBLE("stop_prob", trip.stop_prob, "probability of stopping at an intersection"),
        V2N_DOUBLE("stop_time_s", trip.stop_time_s, "stop duration at an intersection [s]"),
        V2N_BOOL("per_drop_trace", per_drop_trace, "draw a new synthetic trace for every drop"),
        // Monte Carlo
        V2N_INT("n_drops", n_drops, "Monte Carlo drops per campaign"),
        Entry{{"root_seed", "root seed of all random streams", true},
              [](SimConfig& c, std::string_view v) { c.root_seed = to_u64("root_seed", v); },
              [](const SimConfig& c) { return std::to_string(c.root_seed); }},
        Entry{{"workers", "worker threads (0 = all cores); never changes results", false},
              [](SimConfig& c, std::string_view v) { c.workers = static_cast<int>(to_int("workers", v)); },
              [](const SimConfig& c) { return std::to_string(c.workers); }},
        // sweep grids
        Entry{{"lambda_mmw_grid", "sweep densities, list or start:stop:step", true},
              [](SimConfig& c, std::string_view v) { c.lambda_mmw_grid = to_double_list("lambda_mmw_grid", v); },
              [](const SimConfig& c) { return join(c.lambda_mmw_grid); }},
        Entry{{"array_grid", "sweep array pairs NxM, comma separated", true},
              [](SimConfig& c, std::string_view v) { c.array_grid = to_array_list("array_grid", v); },
              [](const SimConfig& c) { return join(c.array_grid); }},
        Entry{{"t_tr_grid", "sweep tracking periods [s]", true},
              [](SimConfig& c, std::string_view v) { c.t_tr_grid = to_double_list("t_tr_grid", v); },
              [](const SimConfig& c) { return join(c.t_tr_grid); }},
    };
    return table;
}

#undef V2N_DOUBLE
#undef V2N_BOOL
#undef V2N_INT

const Entry& find_entry(std::string_view key)
{
    for (const auto& e : entries()) {
        if (e.key.name == key) {
            return e;
        }
    }
    throw ConfigError("unknown key '" + std::string(key) + "'");
}

} // namespace

const std::vector<ConfigKey>& config_keys()
{
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const auto& e : entries()) {
            k.push_back(e.key);
        }
        return k;
    }();
    return keys;
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value)
{
    find_entry(trim(key)).set(config, value);
}

std::string get_config_value(const SimConfig& config, std::string_view key) { return find_entry(key).get(config); }

void apply_override(SimConfig& config, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not KEY=VALUE");
    }
    set_config_value(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void apply_config_text(SimConfig& config, std::string_view text)
{
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto line = text.substr(start, end - start);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        start = end + 1;
    }
}

SimConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    SimConfig config;
    apply_config_text(config, ss.str());
    return config;
}

std::string canonical_config_text(const SimConfig& config)
{
    std::string out;
    for (const auto& e : entries()) {
        out += e.key.name + " = " + e.get(config) + "\n";
    }
    return out;
}

std::string config_hash(const SimConfig& config)
{
    std::string text;
    for (const auto& e : entries()) {
        if (e.key.effective) {
            text += e.key.name + "=" + e.get(config) + "\n";
        }
    }
    const auto h = fnv1a64(text);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 0; i < 16; ++i) {
        hex[15 - i] = kHex[(h >> (4 * i)) & 0xF];
    }
    return hex;
}

long slot_steps(double t_tr_s, double dt_s)
{
    if (t_tr_s == 0.0) {
        return 0;
    }
    return std::lround(t_tr_s / dt_s);
}

void validate(const SimConfig& c)
{
    auto require = [](bool ok, const char* key, const std::string& why) {
        if (!ok) {
            throw ConfigError(std::string(key) + ": " + why);
        }
    };
    require(c.area_side_m > 0.0, "area_side_m", "must be positive");
    require(c.lambda_lte >= 0.0, "lambda_lte", "density must be >= 0");
    require(c.lambda_mmw >= 0.0, "lambda_mmw", "density must be >= 0");
    require(c.mmw_radio.bandwidth_hz > 0.0, "bandwidth_mmw_hz", "must be positive");
    require(c.lte_radio.bandwidth_hz > 0.0, "bandwidth_lte_hz", "must be positive");
    require(c.channel.a_los_per_m > 0.0, "a_los", "must be positive");
    require(c.channel.sigma_los_db >= 0.0, "sigma_los_db", "must be >= 0");
    require(c.channel.sigma_nlos_db >= 0.0, "sigma_nlos_db", "must be >= 0");
    require(c.channel.los_corr_m >= 0.0, "los_corr_m", "must be >= 0");
    require(c.channel.shadow_corr_m >= 0.0, "shadow_corr_m", "must be >= 0");
    require(c.channel.d_min_m > 0.0, "d_min_m", "must be positive");
    require(c.arrays.vehicle >= 1, "n_vehicle", "needs at least one element");
    require(c.arrays.rsu >= 1, "m_rsu", "needs at least one element");
    require(c.antenna.beamwidth_coeff_deg > 0.0, "beamwidth_coeff_deg", "must be positive");
    require(c.antenna.side_lobe_drop_db >= 0.0, "side_lobe_drop_db", "must be >= 0");
    require(c.trip.dt_s > 0.0, "dt_s", "must be positive");
    require(c.trip.duration_s > 0.0, "duration_s", "must be positive");
    require(c.trip.grid.blocks >= 1, "grid_blocks", "need at least one block");
    require(c.trip.grid.block_m > 0.0, "grid_block_m", "must be positive");
    require(c.trip.v_max_mps > 0.0, "v_max_mps", "must be positive");
    require(c.trip.accel_mps2 > 0.0, "accel_mps2", "must be positive");
    require(c.trip.stop_prob >= 0.0 && c.trip.stop_prob <= 1.0, "stop_prob", "must be in [0, 1]");
    require(c.trip.stop_time_s >= 0.0, "stop_time_s", "must be >= 0");
    require(c.n_drops >= 1, "n_drops", "need at least one drop");
    require(c.workers >= 0, "workers", "must be >= 0");
    require(c.trace_source != TraceSource::File || !c.trace_path.empty(), "trace_path",
            "required when trace_source = file");

    auto check_period = [&](double t_tr, const char* key) {
        require(t_tr >= 0.0, key, "tracking period must be >= 0");
        if (t_tr > 0.0) {
            const double steps = t_tr / c.trip.dt_s;
            require(std::abs(steps - std::round(steps)) < 1e-6 && std::round(steps) >= 1.0, key,
                    "tracking period must be 0 or an integer multiple of dt_s");
        }
    };
    check_period(c.t_tr_s, "t_tr_s");
    require(!c.lambda_mmw_grid.empty(), "lambda_mmw_grid", "grid must not be empty");
    require(!c.array_grid.empty(), "array_grid", "grid must not be empty");
    require(!c.t_tr_grid.empty(), "t_tr_grid", "grid must not be empty");
    for (double l : c.lambda_mmw_grid) {
        require(l >= 0.0, "lambda_mmw_grid", "density must be >= 0");
    }
    for (const auto& a : c.array_grid) {
        require(a.vehicle >= 1 && a.rsu >= 1, "array_grid", "arrays need at least one element");
    }
    for (double t : c.t_tr_grid) {
        check_period(t, "t_tr_grid");
    }
}

} // namespace v2n
