#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "v2n/antenna.hpp"
#include "v2n/channel.hpp"
#include "v2n/link.hpp"
#include "v2n/mobility.hpp"

namespace v2n {

enum class TraceSource { Synthetic, File, Static };

struct ArrayPair {
    int vehicle = 16; // N
    int rsu = 64;     // M
    friend bool operator==(ArrayPair, ArrayPair) = default;
};

/// Every simulation parameter. Defaults reproduce the reference scenario.
struct SimConfig {
    // deployment
    double area_side_m = 1000.0;
    double lambda_lte = 4.0;
    double lambda_mmw = 30.0;
    bool fixed_lte_layout = false;
    bool lte_nonempty = true;

    // radios
    RadioParams mmw_radio = default_mmwave_radio();
    RadioParams lte_radio = default_lte_radio();
    bool sinr_mode = false;

    // channel and antennas
    ChannelParams channel;
    AntennaParams antenna;
    ArrayPair arrays;
    double t_tr_s = 0.0; // 0: perfect alignment

    // mobility
    TraceSource trace_source = TraceSource::Synthetic;
    std::string trace_path;
    std::string trace_vehicle;
    Position static_position{500.0, 500.0};
    RandomTripParams trip;
    bool per_drop_trace = false;

    // Monte Carlo
    int n_drops = 200;
    std::uint64_t root_seed = 1;
    int workers = 0; // 0: hardware concurrency; never affects results

    // sweep grids
    std::vector<double> lambda_mmw_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::vector<ArrayPair> array_grid{{1, 64}, {4, 4}, {16, 64}};
    std::vector<double> t_tr_grid{0.0};

    double dt_s() const { return trip.dt_s; }
};

/// Description of one `key = value` entry.
struct ConfigKey {
    std::string name;
    std::string help;
    bool effective = true; // part of the config hash
};

const std::vector<ConfigKey>& config_keys();

/// Sets one key from its textual value. Throws ConfigError naming the key.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Current value of a key in canonical text form.
std::string get_config_value(const SimConfig& config, std::string_view key);

/// Applies `key=value`.
void apply_override(SimConfig& config, std::string_view assignment);

/// Parses the line-based `key = value` format; `#` starts a comment.
void apply_config_text(SimConfig& config, std::string_view text);
SimConfig load_config_file(const std::filesystem::path& path);

/// Full `key = value` listing of every key, in a fixed order.
std::string canonical_config_text(const SimConfig& config);

/// FNV-1a over the canonical text of the effective keys, as 16 hex digits.
std::string config_hash(const SimConfig& config);

/// Throws ConfigError naming the first invalid key.
void validate(const SimConfig& config);

/// Number of time steps in one beam-tracking slot, 0 for perfect alignment.
long slot_steps(double t_tr_s, double dt_s);

} // namespace v2n
