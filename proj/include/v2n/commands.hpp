#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "v2n/config.hpp"

namespace v2n {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2 };

struct CommandOptions {
    std::optional<std::filesystem::path> config_path;
    std::vector<std::string> overrides; // KEY=VALUE, applied after the file
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> workers; // falls back to $V2N_WORKERS, then the config
    std::filesystem::path out_dir = "out";
    bool emit_timeseries = false;
    std::string figure; // sweep preset; empty runs the config's own grids
};

/// Config file, then --set overrides, then --seed/--drops. Throws ConfigError.
SimConfig resolve_config(const CommandOptions& options);

/// Names of the sweep presets.
const std::vector<std::string>& figure_presets();

/// Applies a preset's grids and scenario to `config`. Throws ConfigError for
/// an unknown name.
void apply_figure_preset(SimConfig& config, const std::string& figure);

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate_trace(const std::filesystem::path& trace_path, std::ostream& out, std::ostream& err);

} // namespace v2n
