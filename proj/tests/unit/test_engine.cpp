#include <doctest.h>

#include <cmath>
#include <sstream>

#include "v2n/config.hpp"
#include "v2n/engine.hpp"
#include "v2n/errors.hpp"
#include "v2n/report.hpp"

using namespace v2n;

namespace {

SimConfig small_config()
{
    SimConfig c;
    c.trip.duration_s = 20.0;
    c.n_drops = 6;
    c.lambda_mmw = 50.0;
    return c;
}

SimConfig pinned_config()
{
    SimConfig c;
    c.trace_source = TraceSource::Static;
    c.static_position = {500.0, 500.0};
    c.trip.duration_s = 5.0;
    c.n_drops = 1;
    c.channel.mmw_los_mode = LosMode::AlwaysLos;
    c.channel.lte_los_mode = LosMode::AlwaysLos;
    c.channel.sigma_los_db = 0.0;
    c.channel.mmw_fading = false;
    c.channel.lte_fading = false;
    c.arrays = {16, 64};
    c.t_tr_s = 0.0;
    return c;
}

std::string summary_bytes(const SimConfig& c, int workers)
{
    const auto res = Simulator(c).run_campaign(workers);
    std::ostringstream out;
    write_summary_csv(out, campaign_rows(c, res));
    return out.str();
}

} // namespace

TEST_CASE("pinned geometry matches the closed-form budget")
{
    Simulator sim(pinned_config());
    sim.set_fixed_deployment(make_deployment(1000.0, {{500.0, 600.0}}, {{510.0, 500.0}}));
    const auto d = sim.run_drop(0);
    REQUIRE(d.mmw.rate_bps.size() == 50);
    // 30 dBm + 12.04 + 18.06 dBi - (61.4 + 20) dB against -79 dBm noise.
    const double expected = 19168523990.243134;
    for (double r : d.mmw.rate_bps) {
        CHECK(std::abs(r - expected) / expected < 1e-9);
    }
    // LTE at 100 m, LOS, no fading: 46 - 79.2 + 95.99 dB SNR.
    const double lte_snr = 46.0 - (103.4 + 24.2 * std::log10(0.1)) - (-174.0 + 10.0 * std::log10(20e6) + 5.0);
    const double lte_expected = 20e6 * std::log2(1.0 + std::pow(10.0, lte_snr / 10.0));
    for (double r : d.lte.rate_bps) {
        CHECK(std::abs(r - lte_expected) / lte_expected < 1e-9);
    }
}

TEST_CASE("omnidirectional arrays add no gain")
{
    auto c = pinned_config();
    c.arrays = {1, 1};
    Simulator sim(c);
    sim.set_fixed_deployment(make_deployment(1000.0, {}, {{510.0, 500.0}}));
    const auto d = sim.run_drop(0);
    for (double s : d.mmw.snr_db) {
        CHECK(s == doctest::Approx(30.0 - 81.4 + 79.0));
    }
    // Empty LTE layer: no serving RSU.
    for (std::size_t k = 0; k < d.t.size(); ++k) {
        CHECK(d.lte.rate_bps[k] == 0.0);
        CHECK(d.lte_serving[k] == -1);
    }
}

TEST_CASE("empty mmWave layer")
{
    auto c = small_config();
    c.lambda_mmw = 0.0;
    const auto d = Simulator(c).run_drop(0);
    double lte = 0;
    for (std::size_t k = 0; k < d.t.size(); ++k) {
        CHECK(d.mmw.rate_bps[k] == 0.0);
        CHECK(d.mmw_serving[k] == -1);
        lte += d.lte.rate_bps[k];
    }
    CHECK(lte > 0.0);
}

TEST_CASE("drops are deterministic and series have trace length")
{
    const auto c = small_config();
    const Simulator sim(c);
    const auto a = sim.run_drop(3);
    const auto b = Simulator(c).run_drop(3);
    CHECK(a == b);
    CHECK_FALSE(a == sim.run_drop(4));
    for (const auto& d : {a, sim.run_drop(0)}) {
        CHECK(d.t.size() == sim.trace().size());
        CHECK(d.lte.rate_bps.size() == d.t.size());
        CHECK(d.mmw.snr_db.size() == d.t.size());
        CHECK(d.mmw_lost.size() == d.t.size());
        CHECK(d.samples(Tech::MmWave).size() == d.t.size());
    }
}

TEST_CASE("perfect alignment never loses the beam")
{
    auto c = small_config();
    c.t_tr_s = 0.0;
    const auto res = Simulator(c).run_campaign(1, true);
    CHECK(res.loss_events == 0);
    CHECK(res.slots == 0);
    CHECK(std::isnan(res.loss_frequency()));
    for (const auto& d : res.drops) {
        for (auto l : d.mmw_lost) {
            CHECK(l == 0);
        }
    }
}

TEST_CASE("slotted tracking records loss events")
{
    auto c = small_config();
    c.t_tr_s = 1.0;
    c.n_drops = 10;
    c.lambda_mmw = 100.0;
    const auto res = Simulator(c).run_campaign(1, true);
    CHECK(res.slots > 0);
    CHECK(res.loss_events == res.slots_with_loss);
    long events = 0;
    for (const auto& d : res.drops) {
        events += static_cast<long>(d.loss_events.size());
        for (const auto& e : d.loss_events) {
            const auto k = static_cast<std::size_t>(std::llround(e.t / c.dt_s()));
            CHECK(d.mmw_lost[k] == 1);
            CHECK(e.slot == static_cast<long>(k) / 10);
        }
    }
    CHECK(events == res.loss_events);
}

TEST_CASE("campaigns are invariant to worker count")
{
    const auto c = small_config();
    CHECK(summary_bytes(c, 1) == summary_bytes(c, 8));
    CHECK(summary_bytes(c, 1) == summary_bytes(c, 3));
}

TEST_CASE("more drops extend the campaign")
{
    auto c = small_config();
    c.n_drops = 3;
    const auto small = Simulator(c).run_campaign(1, true);
    c.n_drops = 6;
    const auto large = Simulator(c).run_campaign(2, true);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(small.drops[i] == large.drops[i]);
    }
}

TEST_CASE("one drop campaign equals run_drop plus aggregate")
{
    auto c = small_config();
    c.n_drops = 1;
    const Simulator sim(c);
    const auto res = sim.run_campaign(1);
    const auto d = sim.run_drop(0);
    const std::vector<TechSeries> one{d.mmw};
    const auto s = aggregate(one, c.mmw_radio.outage_threshold_db.value);
    CHECK(res.mmw.mean_rate_bps == s.mean_rate_bps);
    CHECK(res.mmw.rho_var == s.rho_var);
    CHECK(res.mmw.outage_prob == s.outage_prob);
}

TEST_CASE("LTE results do not depend on the mmWave density")
{
    auto c = small_config();
    const auto a = Simulator(c).run_drop(2);
    c.lambda_mmw = 90.0;
    const auto b = Simulator(c).run_drop(2);
    CHECK(a.lte == b.lte);
    CHECK(a.lte_serving == b.lte_serving);
}

TEST_CASE("sweep row layout")
{
    auto c = small_config();
    c.n_drops = 2;
    c.trip.duration_s = 5.0;
    const auto rows = sweep(c, 1);
    REQUIRE(rows.size() == 31);
    CHECK(rows[0].tech == Tech::Lte);
    CHECK(std::isnan(rows[0].lambda_mmw));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].tech == Tech::MmWave);
    }
    CHECK(rows[1].lambda_mmw == 10.0);
    CHECK(rows[1].arrays == ArrayPair{1, 64});
    CHECK(rows[10].lambda_mmw == 100.0);
    CHECK(rows[11].arrays == ArrayPair{4, 4});

    c.lambda_mmw_grid = {40};
    c.array_grid = {{4, 4}};
    const auto single = sweep(c, 1);
    REQUIRE(single.size() == 2);
    CHECK(single[1].lambda_mmw == 40.0);
}

TEST_CASE("invalid configurations fail before stepping")
{
    auto c = small_config();
    c.lambda_mmw = -1.0;
    CHECK_THROWS_AS(Simulator{c}, ConfigError);
    c = small_config();
    c.trace_source = TraceSource::File;
    c.trace_path = "/nonexistent/trace.csv";
    CHECK_THROWS_AS(Simulator{c}, TraceError);
    c = small_config();
    c.arrays.vehicle = 0;
    CHECK_THROWS_AS(Simulator{c}, ConfigError);
}
