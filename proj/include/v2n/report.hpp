#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "v2n/engine.hpp"

namespace v2n {

inline constexpr const char* kVersion = "1.0.0";

/// `tech,lambda_mmw,N,M,T_tr_s,mean_rate_bps,rho_var,outage_prob,ci_rate,ci_outage,n_drops`
void write_summary_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Rows of a single campaign: the LTE row, then the mmWave row.
std::vector<SweepRow> campaign_rows(const SimConfig& config, const CampaignResult& result);

/// `t_s,tech,serving_rsu,snr_db,rate_bps,lost_alignment`, LTE and mmWave
/// rows interleaved per time step. A missing serving RSU prints as `NA`.
void write_timeseries_csv(std::ostream& out, const DropResult& drop);

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;
    bool dashed = false;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

/// Static SVG line chart.
void write_svg(std::ostream& out, const LinePlot& plot);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t root_seed = 0;
    std::string version = kVersion;
    std::vector<std::string> outputs;
    double wall_clock_s = 0.0;
};

/// Writes manifest.json via a temporary file and a rename.
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace v2n
