#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "v2n/config.hpp"
#include "v2n/deployment.hpp"
#include "v2n/link.hpp"
#include "v2n/metrics.hpp"
#include "v2n/mobility.hpp"

namespace v2n {

struct AlignmentLossEvent {
    double t = 0.0;
    long slot = 0;
    int rsu_id = -1;
    friend bool operator==(const AlignmentLossEvent&, const AlignmentLossEvent&) = default;
};

/// Everything recorded in one Monte Carlo drop. All series have one entry per
/// trace sample.
struct DropResult {
    std::uint64_t drop_index = 0;
    std::uint64_t deployment_id = 0; // key of the stream the layout was drawn from
    std::vector<double> t;
    TechSeries lte{Tech::Lte, 0.1, {}, {}};
    TechSeries mmw{Tech::MmWave, 0.1, {}, {}};
    std::vector<int> lte_serving;
    std::vector<int> mmw_serving;
    std::vector<std::uint8_t> mmw_lost;
    std::vector<AlignmentLossEvent> loss_events;
    long slots = 0;           // mmWave tracking slots that had a serving RSU
    long slots_with_loss = 0; // of which lost alignment before the slot ended

    std::vector<LinkSample> samples(Tech tech) const;
    friend bool operator==(const DropResult&, const DropResult&) = default;
};

struct CampaignResult {
    MetricsSummary lte;
    MetricsSummary mmw;
    long loss_events = 0;
    long slots = 0;
    long slots_with_loss = 0;
    std::vector<DropResult> drops; // filled only when requested

    /// Per-slot alignment-loss frequency; NaN without tracked slots.
    double loss_frequency() const;
};

/// Runs drops of one configuration. Construction validates the config and
/// prepares the shared vehicle trace; after that the object is immutable and
/// run_drop() may be called from several threads.
class Simulator {
public:
    explicit Simulator(SimConfig config);
    Simulator(SimConfig config, MobilityTrace trace);

    /// Replaces the PPP layout by a fixed one in every drop.
    void set_fixed_deployment(Deployment deployment);

    const SimConfig& config() const { return config_; }
    const MobilityTrace& trace() const { return trace_; }

    /// Deterministic in (root_seed, drop_index).
    DropResult run_drop(std::uint64_t drop_index) const;

    /// Executes drops 0..n_drops-1 on `workers` threads (0: config value,
    /// then hardware concurrency) and aggregates them in drop order.
    CampaignResult run_campaign(int workers = 0, bool keep_drops = false) const;

    Deployment deployment_for(std::uint64_t drop_index) const;

private:
    MobilityTrace trace_for(std::uint64_t drop_index) const;

    SimConfig config_;
    MobilityTrace trace_;
    std::optional<Deployment> fixed_deployment_;
};

/// Prepares the vehicle trace a config describes (file, static or synthetic,
/// uniformly sampled at dt_s). Throws ConfigError/TraceError.
MobilityTrace make_trace(const SimConfig& config, const RngStream& stream);

CampaignResult run_campaign(const SimConfig& config, int workers = 0);

struct SweepRow {
    Tech tech = Tech::MmWave;
    double lambda_mmw = kNotApplicable; // NaN for the LTE baseline
    ArrayPair arrays{1, 1};
    double t_tr_s = 0.0;
    MetricsSummary summary;
    long loss_events = 0;
    long slots = 0;
    long slots_with_loss = 0;
};

/// One LTE baseline row, then one mmWave row per point of
/// t_tr_grid x array_grid x lambda_mmw_grid (lambda varying fastest).
/// The LTE layer uses streams disjoint from mmWave, so one baseline serves
/// every grid point.
std::vector<SweepRow> sweep(const SimConfig& config, int workers = 0);

int resolve_workers(int requested);

} // namespace v2n
