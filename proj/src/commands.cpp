#include "v2n/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "v2n/engine.hpp"
#include "v2n/errors.hpp"
#include "v2n/format.hpp"
#include "v2n/report.hpp"

namespace v2n {

namespace fs = std::filesystem;

SimConfig resolve_config(const CommandOptions& options)
{
    SimConfig config = options.config_path ? load_config_file(*options.config_path) : SimConfig{};
    for (const auto& o : options.overrides) {
        apply_override(config, o);
    }
    if (options.seed) {
        config.root_seed = *options.seed;
    }
    if (options.drops) {
        config.n_drops = *options.drops;
    }
    if (options.workers) {
        config.workers = *options.workers;
    } else if (const char* env = std::getenv("V2N_WORKERS"); env && *env) {
        set_config_value(config, "workers", env);
    }
    validate(config);
    return config;
}

const std::vector<std::string>& figure_presets()
{
    static const std::vector<std::string> names{"fig2", "fig3", "fig5", "fig6", "fig7"};
    return names;
}

void apply_figure_preset(SimConfig& config, const std::string& figure)
{
    if (figure == "fig2" || figure == "fig7") {
        config.lambda_mmw_grid = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
        config.array_grid = {{1, 64}, {4, 4}, {16, 64}};
        config.t_tr_grid = {0.0};
    } else if (figure == "fig5") {
        config.lambda_mmw_grid = {10, 30, 50, 70, 90};
        config.array_grid = {{16, 64}};
        config.t_tr_grid = {0.0};
    } else if (figure == "fig3") {
        config.lambda_mmw_grid = {100};
        config.array_grid = {{1, 64}, {4, 4}, {16, 64}};
        config.t_tr_grid = {0.0};
    } else if (figure == "fig6") {
        config.lambda_mmw_grid = {30};
        config.array_grid = {{16, 64}};
        config.t_tr_grid = {0.1, 1.0};
    } else {
        throw ConfigError("figure: unknown preset '" + figure + "' (expected fig2, fig3, fig5, fig6 or fig7)");
    }
}

namespace {

double elapsed_s(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string array_label(ArrayPair a)
{
    return "mmWave N=" + std::to_string(a.vehicle) + ", M=" + std::to_string(a.rsu);
}

// Rows of one mmWave array configuration, in grid order.
std::vector<const SweepRow*> rows_for(const std::vector<SweepRow>& rows, ArrayPair arrays, double t_tr)
{
    std::vector<const SweepRow*> out;
    for (const auto& r : rows) {
        if (r.tech == Tech::MmWave && r.arrays == arrays && r.t_tr_s == t_tr) {
            out.push_back(&r);
        }
    }
    return out;
}

LinePlot sweep_plot(const SimConfig& config, const std::vector<SweepRow>& rows, const std::string& figure)
{
    enum class Metric { Rate, Rho, Outage } metric = Metric::Rate;
    LinePlot plot;
    plot.x_label = "lambda_mmW [RSU/km^2]";
    if (figure == "fig5") {
        metric = Metric::Rho;
        plot.title = "Stability index vs mmWave RSU density";
        plot.y_label = "rho_var";
    } else if (figure == "fig7") {
        metric = Metric::Outage;
        plot.title = "Outage probability vs mmWave RSU density";
        plot.y_label = "outage probability";
        plot.log_y = true;
    } else {
        plot.title = "Average data rate vs mmWave RSU density";
        plot.y_label = "rate [Gbps]";
    }
    auto value = [&](const MetricsSummary& s) {
        switch (metric) {
        case Metric::Rho:
            return s.rho_var;
        case Metric::Outage:
            return s.outage_prob;
        case Metric::Rate:
            break;
        }
        return s.mean_rate_bps / 1e9;
    };
    for (double t_tr : config.t_tr_grid) {
        for (const auto& arrays : config.array_grid) {
            PlotSeries s;
            s.name = array_label(arrays);
            if (config.t_tr_grid.size() > 1) {
                s.name += ", T_tr=" + format_double(t_tr) + " s";
            }
            for (const auto* r : rows_for(rows, arrays, t_tr)) {
                s.x.push_back(r->lambda_mmw);
                s.y.push_back(value(r->summary));
            }
            plot.series.push_back(std::move(s));
        }
    }
    PlotSeries lte;
    lte.name = "LTE";
    lte.dashed = true;
    lte.markers = false;
    const double lte_value = value(rows.front().summary);
    lte.x = {config.lambda_mmw_grid.front(), config.lambda_mmw_grid.back()};
    lte.y = {lte_value, lte_value};
    plot.series.push_back(std::move(lte));
    return plot;
}

// fig3 / fig6: rate over time of drop 0 for each grid point, plus LTE.
int run_timeseries_preset(const SimConfig& config, const std::string& figure, std::ostream& out,
                          RunManifest& manifest, const fs::path& out_dir)
{
    std::ostringstream csv;
    csv << "t_s,series,serving_rsu,snr_db,rate_bps,lost_alignment\n";
    LinePlot plot;
    plot.title = figure == "fig6" ? "Rate over time for different tracking periods"
                                  : "Rate over time for different array configurations";
    plot.x_label = "time [s]";
    plot.y_label = "rate [Gbps]";

    bool lte_done = false;
    for (double t_tr : config.t_tr_grid) {
        for (const auto& arrays : config.array_grid) {
            SimConfig point = config;
            point.lambda_mmw = config.lambda_mmw_grid.front();
            point.arrays = arrays;
            point.t_tr_s = t_tr;
            const DropResult drop = Simulator(point).run_drop(0);
            std::string name = array_label(arrays);
            if (figure == "fig6") {
                name = "mmWave T_tr=" + format_double(t_tr) + " s";
            }
            PlotSeries s{name, drop.t, {}, false, false};
            for (std::size_t k = 0; k < drop.t.size(); ++k) {
                s.y.push_back(drop.mmw.rate_bps[k] / 1e9);
                csv << format_double(drop.t[k]) << ',' << name << ','
                    << (drop.mmw_serving[k] < 0 ? std::string("NA") : std::to_string(drop.mmw_serving[k])) << ','
                    << format_double(drop.mmw.snr_db[k]) << ',' << format_double(drop.mmw.rate_bps[k]) << ','
                    << int(drop.mmw_lost[k]) << '\n';
            }
            plot.series.push_back(std::move(s));
            if (!lte_done) {
                PlotSeries l{"LTE", drop.t, {}, false, true};
                std::ostringstream lte_rows;
                for (std::size_t k = 0; k < drop.t.size(); ++k) {
                    l.y.push_back(drop.lte.rate_bps[k] / 1e9);
                    lte_rows << format_double(drop.t[k]) << ",LTE,"
                             << (drop.lte_serving[k] < 0 ? std::string("NA") : std::to_string(drop.lte_serving[k]))
                             << ',' << format_double(drop.lte.snr_db[k]) << ','
                             << format_double(drop.lte.rate_bps[k]) << ",0\n";
                }
                csv << lte_rows.str();
                plot.series.push_back(std::move(l));
                lte_done = true;
            }
        }
    }
    const auto csv_path = out_dir / (figure + ".csv");
    const auto svg_path = out_dir / (figure + ".svg");
    write_file_atomic(csv_path, csv.str());
    std::ostringstream svg;
    write_svg(svg, plot);
    write_file_atomic(svg_path, svg.str());
    manifest.outputs.push_back(csv_path.filename().string());
    manifest.outputs.push_back(svg_path.filename().string());
    out << "wrote " << csv_path.string() << " and " << svg_path.string() << '\n';
    return kExitOk;
}

template <typename F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const TraceError& e) {
        err << "trace error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto start = std::chrono::steady_clock::now();
        const SimConfig config = resolve_config(options);
        const Simulator sim(config);
        fs::create_directories(options.out_dir);
        const auto result = sim.run_campaign(config.workers, options.emit_timeseries);

        RunManifest manifest;
        manifest.command = "simulate";
        manifest.config_hash = config_hash(config);
        manifest.root_seed = config.root_seed;

        const auto rows = campaign_rows(config, result);
        std::ostringstream csv;
        write_summary_csv(csv, rows);
        write_file_atomic(options.out_dir / "summary.csv", csv.str());
        manifest.outputs.push_back("summary.csv");

        if (options.emit_timeseries) {
            fs::create_directories(options.out_dir / "timeseries");
            for (const auto& drop : result.drops) {
                std::string name = std::to_string(drop.drop_index);
                name = "timeseries/drop_" + std::string(name.size() < 4 ? 4 - name.size() : 0, '0') + name + ".csv";
                std::ostringstream ts;
                write_timeseries_csv(ts, drop);
                write_file_atomic(options.out_dir / name, ts.str());
                manifest.outputs.push_back(name);
            }
        }
        manifest.wall_clock_s = elapsed_s(start);
        write_manifest(options.out_dir / "manifest.json", manifest);

        out << "LTE    mean rate " << format_fixed(result.lte.mean_rate_bps / 1e9, 4) << " Gbps, rho_var "
            << format_fixed(result.lte.rho_var, 4) << ", outage " << format_fixed(result.lte.outage_prob, 4) << '\n';
        out << "mmWave mean rate " << format_fixed(result.mmw.mean_rate_bps / 1e9, 4) << " Gbps, rho_var "
            << format_fixed(result.mmw.rho_var, 4) << ", outage " << format_fixed(result.mmw.outage_prob, 4) << '\n';
        out << "wrote " << (options.out_dir / "summary.csv").string() << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto start = std::chrono::steady_clock::now();
        SimConfig config = resolve_config(options);
        const std::string name = options.figure.empty() ? "sweep" : options.figure;
        if (!options.figure.empty()) {
            apply_figure_preset(config, options.figure);
            validate(config);
        }
        fs::create_directories(options.out_dir);
        RunManifest manifest;
        manifest.command = "sweep " + name;
        manifest.config_hash = config_hash(config);
        manifest.root_seed = config.root_seed;

        if (name == "fig3" || name == "fig6") {
            run_timeseries_preset(config, name, out, manifest, options.out_dir);
        } else {
            const auto rows = sweep(config, config.workers);
            std::ostringstream csv;
            write_summary_csv(csv, rows);
            const auto csv_path = options.out_dir / (name + ".csv");
            const auto svg_path = options.out_dir / (name + ".svg");
            write_file_atomic(csv_path, csv.str());
            std::ostringstream svg;
            write_svg(svg, sweep_plot(config, rows, name));
            write_file_atomic(svg_path, svg.str());
            manifest.outputs.push_back(csv_path.filename().string());
            manifest.outputs.push_back(svg_path.filename().string());
            out << "wrote " << rows.size() << " rows to " << csv_path.string() << " and plot " << svg_path.string()
                << '\n';
        }
        manifest.wall_clock_s = elapsed_s(start);
        write_manifest(options.out_dir / "manifest.json", manifest);
        return kExitOk;
    });
}

int cmd_validate_trace(const fs::path& trace_path, std::ostream& out, std::ostream& err)
{
    try {
        const auto trace = parse_trace_file(trace_path);
        out << "vehicle " << trace.vehicle_id << '\n';
        out << "samples " << trace.size() << '\n';
        out << "duration " << format_fixed(trace.duration(), 1) << " s\n";
        out << "max speed " << format_fixed(trace.max_speed(), 2) << " m/s\n";
        out << "timestamps strictly increasing\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "invalid trace: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace v2n
