#include "v2n/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "v2n/antenna.hpp"
#include "v2n/channel.hpp"
#include "v2n/errors.hpp"

namespace v2n {

std::vector<LinkSample> DropResult::samples(Tech tech) const
{
    const auto& series = tech == Tech::Lte ? lte : mmw;
    const auto& serving = tech == Tech::Lte ? lte_serving : mmw_serving;
    std::vector<LinkSample> out;
    out.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        LinkSample s;
        s.t = t[k];
        s.tech = tech;
        s.serving_rsu = serving[k];
        s.snr_db = {series.snr_db[k]};
        s.rate_bps = series.rate_bps[k];
        s.lost_alignment = tech == Tech::MmWave && mmw_lost[k] != 0;
        out.push_back(s);
    }
    return out;
}

double CampaignResult::loss_frequency() const
{
    return slots > 0 ? static_cast<double>(slots_with_loss) / static_cast<double>(slots) : kNotApplicable;
}

int resolve_workers(int requested)
{
    if (requested > 0) {
        return requested;
    }
    const auto hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

MobilityTrace make_trace(const SimConfig& config, const RngStream& stream)
{
    const double dt = config.dt_s();
    switch (config.trace_source) {
    case TraceSource::File: {
        TraceParseOptions opts;
        opts.vehicle_id = config.trace_vehicle;
        auto raw = parse_trace_file(config.trace_path, opts);
        return resample(raw, dt);
    }
    case TraceSource::Static: {
        MobilityTrace trace;
        trace.vehicle_id = "static";
        trace.dt = dt;
        const auto n = static_cast<std::size_t>(std::llround(config.trip.duration_s / dt));
        for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
            trace.samples.push_back({static_cast<double>(k) * dt, config.static_position, 0.0});
        }
        return trace;
    }
    case TraceSource::Synthetic:
        break;
    }
    return synth_randomtrip_trace(config.trip, stream);
}

namespace {

struct Layer {
    const std::vector<Rsu>* rsus = nullptr;
    std::vector<LinkStreams> streams;
    std::vector<LinkState> states;
};

Layer make_layer(const std::vector<Rsu>& rsus, const RngStream& drop, const char* prefix)
{
    Layer layer;
    layer.rsus = &rsus;
    layer.streams.reserve(rsus.size());
    const std::string p(prefix);
    for (std::size_t i = 0; i < rsus.size(); ++i) {
        layer.streams.push_back(
            {drop.derive(p + ".los", i), drop.derive(p + ".shadow", i), drop.derive(p + ".fading", i)});
    }
    layer.states.resize(rsus.size());
    return layer;
}

void step_layer(Layer& layer, Position pos, bool first, const ChannelParams& params)
{
    const auto& rsus = *layer.rsus;
    for (std::size_t i = 0; i < rsus.size(); ++i) {
        layer.states[i] = first ? initial_link_state(rsus[i], pos, layer.streams[i], params)
                                : evolve_link_state(layer.states[i], pos, rsus[i], layer.streams[i], params);
    }
}

} // namespace

Simulator::Simulator(SimConfig config) : config_(std::move(config))
{
    validate(config_);
    // Checked once up front so bad array sizes fail before any stepping.
    make_array(config_.arrays.vehicle, config_.antenna);
    make_array(config_.arrays.rsu, config_.antenna);
    trace_ = make_trace(config_, RngStream(config_.root_seed).derive("trace", 0));
    if (trace_.samples.empty()) {
        throw TraceError("empty trace");
    }
}

Simulator::Simulator(SimConfig config, MobilityTrace trace) : config_(std::move(config))
{
    validate(config_);
    make_array(config_.arrays.vehicle, config_.antenna);
    make_array(config_.arrays.rsu, config_.antenna);
    if (trace.samples.empty()) {
        throw TraceError("empty trace");
    }
    const double dt = config_.dt_s();
    if (std::abs(trace.dt - dt) > 1e-9 * dt) {
        trace = resample(trace, dt);
    }
    trace_ = std::move(trace);
}

void Simulator::set_fixed_deployment(Deployment deployment) { fixed_deployment_ = std::move(deployment); }

MobilityTrace Simulator::trace_for(std::uint64_t drop_index) const
{
    if (config_.per_drop_trace && config_.trace_source == TraceSource::Synthetic) {
        return make_trace(config_, RngStream(config_.root_seed).derive("drop", drop_index).derive("trace", 0));
    }
    return trace_;
}

Deployment Simulator::deployment_for(std::uint64_t drop_index) const
{
    if (fixed_deployment_) {
        return *fixed_deployment_;
    }
    const RngStream root(config_.root_seed);
    const RngStream stream = root.derive("drop", drop_index).derive("deployment", 0);
    const DeploymentConfig dc{config_.area_side_m, config_.lambda_lte, config_.lambda_mmw, config_.lte_nonempty};
    if (config_.fixed_lte_layout) {
        return build_deployment(dc, root.derive("lte_layout", 0), stream.derive("layer", 1));
    }
    return build_deployment(dc, stream);
}

DropResult Simulator::run_drop(std::uint64_t drop_index) const
{
    const auto& cfg = config_;
    const RngStream drop = RngStream(cfg.root_seed).derive("drop", drop_index);
    const Deployment deployment = deployment_for(drop_index);
    const MobilityTrace trace = trace_for(drop_index);

    const ArrayConfig veh_array = make_array(cfg.arrays.vehicle, cfg.antenna);
    const ArrayConfig rsu_array = make_array(cfg.arrays.rsu, cfg.antenna);
    const Decibel full_gain = aligned_gain(veh_array, rsu_array);
    const DbmPower noise_mmw = noise_power(cfg.mmw_radio.bandwidth_hz, cfg.mmw_radio.noise_figure_db);
    const DbmPower noise_lte = noise_power(cfg.lte_radio.bandwidth_hz, cfg.lte_radio.noise_figure_db);
    const long slot_len = slot_steps(cfg.t_tr_s, cfg.dt_s());
    const bool perfect = slot_len == 0;

    Layer lte = make_layer(deployment.lte_rsus, drop, "lte");
    Layer mmw = make_layer(deployment.mmw_rsus, drop, "mmw");
    RngStream interferer_rng = drop.derive("interferer", 0);

    const std::size_t n = trace.samples.size();
    DropResult r;
    r.drop_index = drop_index;
    r.deployment_id = drop.derive("deployment", 0).key();
    r.t.reserve(n);
    r.lte.dt = r.mmw.dt = cfg.dt_s();
    for (auto* s : {&r.lte, &r.mmw}) {
        s->rate_bps.reserve(n);
        s->snr_db.reserve(n);
    }
    r.lte_serving.reserve(n);
    r.mmw_serving.reserve(n);
    r.mmw_lost.reserve(n);

    std::optional<std::size_t> mmw_serving;
    BeamState beam;
    std::vector<DbmPower> interference;

    for (std::size_t k = 0; k < n; ++k) {
        const Position pos = trace.samples[k].position;
        const bool first = k == 0;
        r.t.push_back(trace.samples[k].t);

        // LTE: omnidirectional, associated every step.
        step_layer(lte, pos, first, cfg.channel);
        if (const auto idx = associate(lte.states)) {
            const auto& st = lte.states[*idx];
            const DbmPower rx =
                received_power(cfg.lte_radio.tx_power_dbm, Decibel{0.0}, Decibel{0.0}, st.path_loss_db, st.fading_linear);
            const Decibel g = snr(rx, noise_lte);
            r.lte.snr_db.push_back(g.value);
            r.lte.rate_bps.push_back(shannon_rate(cfg.lte_radio.bandwidth_hz, g));
            r.lte_serving.push_back(st.rsu_id);
        } else {
            r.lte.snr_db.push_back(kNegInf);
            r.lte.rate_bps.push_back(0.0);
            r.lte_serving.push_back(-1);
        }

        // mmWave: association and beam alignment only at slot boundaries.
        step_layer(mmw, pos, first, cfg.channel);
        const bool boundary = perfect || static_cast<long>(k) % slot_len == 0;
        if (boundary) {
            const long slot = perfect ? static_cast<long>(k) : static_cast<long>(k) / slot_len;
            mmw_serving = associate(mmw.states);
            if (mmw_serving) {
                beam = realign(pos, (*mmw.rsus)[*mmw_serving], slot);
                if (!perfect) {
                    ++r.slots;
                }
            }
        }
        if (!mmw_serving) {
            r.mmw.snr_db.push_back(kNegInf);
            r.mmw.rate_bps.push_back(0.0);
            r.mmw_serving.push_back(-1);
            r.mmw_lost.push_back(0);
            continue;
        }
        const Rsu& rsu = (*mmw.rsus)[*mmw_serving];
        const LinkState& st = mmw.states[*mmw_serving];
        Decibel gain = full_gain;
        if (!perfect) {
            const bool was_lost = beam.lost;
            auto [g, next] = tracked_gain(beam, pos, rsu, veh_array, rsu_array);
            gain = g;
            beam = next;
            if (beam.lost && !was_lost) {
                r.loss_events.push_back({trace.samples[k].t, beam.aligned_at_slot, rsu.id});
                ++r.slots_with_loss;
            }
        }
        const DbmPower rx = received_power(cfg.mmw_radio.tx_power_dbm, gain, Decibel{0.0}, st.path_loss_db, st.fading_linear);
        Decibel g;
        if (cfg.sinr_mode) {
            interference.clear();
            for (std::size_t i = 0; i < mmw.states.size(); ++i) {
                // One boresight draw per RSU and step keeps the stream layout fixed.
                const double boresight = interferer_rng.uniform(0.0, kTwoPi);
                if (i == *mmw_serving) {
                    continue;
                }
                const Rsu& other = (*mmw.rsus)[i];
                const Decibel g_rsu = pattern_gain(rsu_array, bearing(other.position, pos) - boresight);
                const Decibel g_veh = pattern_gain(veh_array, bearing(pos, other.position) - beam.vehicle_boresight);
                interference.push_back(received_power(cfg.mmw_radio.tx_power_dbm, g_rsu, g_veh,
                                                      mmw.states[i].path_loss_db, mmw.states[i].fading_linear));
            }
            g = sinr(rx, noise_mmw, interference);
        } else {
            g = snr(rx, noise_mmw);
        }
        r.mmw.snr_db.push_back(g.value);
        r.mmw.rate_bps.push_back(shannon_rate(cfg.mmw_radio.bandwidth_hz, g));
        r.mmw_serving.push_back(rsu.id);
        r.mmw_lost.push_back(beam.lost ? 1 : 0);
    }
    return r;
}

CampaignResult Simulator::run_campaign(int workers, bool keep_drops) const
{
    const int n_drops = config_.n_drops;
    const int threads = std::min(resolve_workers(workers > 0 ? workers : config_.workers), n_drops);

    std::vector<TechSeries> lte(static_cast<std::size_t>(n_drops));
    std::vector<TechSeries> mmw(static_cast<std::size_t>(n_drops));
    std::vector<long> events(static_cast<std::size_t>(n_drops));
    std::vector<long> slots(static_cast<std::size_t>(n_drops));
    std::vector<long> lossy(static_cast<std::size_t>(n_drops));
    std::vector<DropResult> kept(keep_drops ? static_cast<std::size_t>(n_drops) : 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_drops));

    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < n_drops; i = next++) {
            const auto idx = static_cast<std::size_t>(i);
            try {
                DropResult d = run_drop(static_cast<std::uint64_t>(i));
                events[idx] = static_cast<long>(d.loss_events.size());
                slots[idx] = d.slots;
                lossy[idx] = d.slots_with_loss;
                lte[idx] = std::move(d.lte);
                mmw[idx] = std::move(d.mmw);
                if (keep_drops) {
                    d.lte = lte[idx];
                    d.mmw = mmw[idx];
                    kept[idx] = std::move(d);
                }
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    CampaignResult result;
    result.lte = aggregate(lte, config_.lte_radio.outage_threshold_db.value);
    result.mmw = aggregate(mmw, config_.mmw_radio.outage_threshold_db.value);
    for (int i = 0; i < n_drops; ++i) {
        result.loss_events += events[static_cast<std::size_t>(i)];
        result.slots += slots[static_cast<std::size_t>(i)];
        result.slots_with_loss += lossy[static_cast<std::size_t>(i)];
    }
    result.drops = std::move(kept);
    return result;
}

CampaignResult run_campaign(const SimConfig& config, int workers)
{
    return Simulator(config).run_campaign(workers);
}

std::vector<SweepRow> sweep(const SimConfig& config, int workers)
{
    validate(config);
    std::vector<SweepRow> rows;

    // The LTE baseline does not depend on the mmWave layer, so it is run
    // once with an empty mmWave layer.
    SimConfig base = config;
    base.lambda_mmw = 0.0;
    base.arrays = config.array_grid.front();
    base.t_tr_s = config.t_tr_grid.front();
    const auto baseline = Simulator(base).run_campaign(workers);
    SweepRow lte_row;
    lte_row.tech = Tech::Lte;
    lte_row.summary = baseline.lte;
    rows.push_back(lte_row);

    for (double t_tr : config.t_tr_grid) {
        for (const auto& arrays : config.array_grid) {
            for (double lambda : config.lambda_mmw_grid) {
                SimConfig point = config;
                point.lambda_mmw = lambda;
                point.arrays = arrays;
                point.t_tr_s = t_tr;
                const auto res = Simulator(point).run_campaign(workers);
                SweepRow row;
                row.tech = Tech::MmWave;
                row.lambda_mmw = lambda;
                row.arrays = arrays;
                row.t_tr_s = t_tr;
                row.summary = res.mmw;
                row.loss_events = res.loss_events;
                row.slots = res.slots;
                row.slots_with_loss = res.slots_with_loss;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace v2n
