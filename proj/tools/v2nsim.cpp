// v2nsim: LTE / mmWave vehicle-to-network Monte Carlo simulator.

#include <iostream>

#include <CLI11.hpp>

#include "v2n/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"LTE and mmWave vehicle-to-network link simulator"};
    app.require_subcommand(1);

    v2n::CommandOptions opts;
    std::string config_path;
    std::uint64_t seed = 0;
    int drops = 0;
    int workers = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        cmd->add_option("--set", opts.overrides, "override a config key, KEY=VALUE (repeatable)");
        cmd->add_option("--seed", seed, "root seed");
        cmd->add_option("--drops", drops, "Monte Carlo drops per campaign");
        cmd->add_option("--workers", workers, "worker threads (default: $V2N_WORKERS, then all cores)");
        cmd->add_option("--out-dir", opts.out_dir, "output directory");
    };

    auto* simulate = app.add_subcommand("simulate", "run one Monte Carlo campaign");
    add_common(simulate);
    simulate->add_flag("--emit-timeseries", opts.emit_timeseries, "write per-drop time-series CSVs");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep or a figure preset");
    add_common(sweep);
    sweep->add_option("--figure", opts.figure, "preset: fig2, fig3, fig5, fig6, fig7");

    std::string trace_path;
    auto* validate = app.add_subcommand("validate-trace", "check a mobility trace CSV");
    validate->add_option("trace", trace_path, "trace CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : v2n::kExitConfig;
    }

    if (!config_path.empty()) {
        opts.config_path = config_path;
    }
    for (auto* cmd : {simulate, sweep}) {
        if (cmd->parsed()) {
            if (cmd->count("--seed")) {
                opts.seed = seed;
            }
            if (cmd->count("--drops")) {
                opts.drops = drops;
            }
            if (cmd->count("--workers")) {
                opts.workers = workers;
            }
        }
    }

    if (simulate->parsed()) {
        return v2n::cmd_simulate(opts, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return v2n::cmd_sweep(opts, std::cout, std::cerr);
    }
    return v2n::cmd_validate_trace(trace_path, std::cout, std::cerr);
}
