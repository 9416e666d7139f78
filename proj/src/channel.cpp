#include "v2n/channel.hpp"

#include <algorithm>
#include <cmath>

namespace v2n {

double lte_los_probability(double d_m) { return lte_los_probability(d_m, DistanceUnit::Meters); }

double lte_los_probability(double d_m, DistanceUnit unit)
{
    const double d = unit == DistanceUnit::Kilometers ? d_m / 1000.0 : d_m;
    if (d <= 0.0) {
        return 1.0;
    }
    const double e = std::exp(-d / 36.0);
    return std::min(18.0 / d, 1.0) * (1.0 - e) + e;
}

Decibel lte_path_loss(double d_m, bool los, const ChannelParams& params)
{
    const double d_km = std::max(d_m, params.d_min_m) / 1000.0;
    const auto& law = los ? params.lte_los : params.lte_nlos;
    return {law.intercept_db + law.slope_db * std::log10(d_km)};
}

double mmwave_los_probability(double d_m, double a_los_per_m)
{
    return std::exp(-a_los_per_m * std::max(d_m, 0.0));
}

Decibel mmwave_path_loss(double d_m, bool los, Decibel shadow_db, const ChannelParams& params)
{
    const double d = std::max(d_m, params.d_min_m);
    const auto& law = los ? params.mmw_los : params.mmw_nlos;
    return {law.intercept_db + law.slope_db * 10.0 * std::log10(d) + shadow_db.value};
}

Decibel sample_shadowing(bool los, RngStream& rng, const ChannelParams& params)
{
    return {rng.normal(0.0, los ? params.sigma_los_db : params.sigma_nlos_db)};
}

LinearRatio sample_fading(RngStream& rng) { return {rng.exponential(1.0)}; }

double los_probability(Tech tech, double d_m, const ChannelParams& params)
{
    const LosMode mode = tech == Tech::Lte ? params.lte_los_mode : params.mmw_los_mode;
    switch (mode) {
    case LosMode::AlwaysLos:
        return 1.0;
    case LosMode::AlwaysNlos:
        return 0.0;
    case LosMode::Stochastic:
        break;
    }
    return tech == Tech::Lte ? lte_los_probability(d_m, params.lte_los_unit) : mmwave_los_probability(d_m, params.a_los_per_m);
}

namespace {

bool draw_los(Tech tech, double d, LinkStreams& rng, const ChannelParams& params)
{
    // Always consume one uniform so the stream layout does not depend on the mode.
    const double u = rng.los.uniform();
    return u < los_probability(tech, d, params);
}

Decibel draw_shadow(Tech tech, bool los, LinkStreams& rng, const ChannelParams& params)
{
    if (tech == Tech::Lte) {
        return {0.0};
    }
    return sample_shadowing(los, rng.shadow, params);
}

LinearRatio draw_fading(Tech tech, LinkStreams& rng, const ChannelParams& params)
{
    const bool on = tech == Tech::Lte ? params.lte_fading : params.mmw_fading;
    return on ? sample_fading(rng.fading) : LinearRatio{1.0};
}

Decibel path_loss(Tech tech, double d, bool los, Decibel shadow, const ChannelParams& params)
{
    return tech == Tech::Lte ? lte_path_loss(d, los, params) : mmwave_path_loss(d, los, shadow, params);
}

} // namespace

LinkState initial_link_state(const Rsu& rsu, Position pos, LinkStreams& rng, const ChannelParams& params)
{
    LinkState s;
    s.rsu_id = rsu.id;
    s.tech = rsu.tech;
    const double d = distance(pos, rsu.position);
    s.los = draw_los(rsu.tech, d, rng, params);
    s.shadow_db = draw_shadow(rsu.tech, s.los, rng, params);
    s.fading_linear = draw_fading(rsu.tech, rng, params);
    s.path_loss_db = path_loss(rsu.tech, d, s.los, s.shadow_db, params);
    s.last_resample_pos = pos;
    s.last_shadow_pos = pos;
    return s;
}

LinkState evolve_link_state(const LinkState& state, Position new_pos, const Rsu& rsu, LinkStreams& rng,
                            const ChannelParams& params)
{
    LinkState s = state;
    const double d = distance(new_pos, rsu.position);
    bool redraw_shadow = false;
    if (distance(new_pos, s.last_resample_pos) >= params.los_corr_m) {
        s.los = draw_los(rsu.tech, d, rng, params);
        s.last_resample_pos = new_pos;
        redraw_shadow = true;
    }
    if (redraw_shadow || distance(new_pos, s.last_shadow_pos) >= params.shadow_corr_m) {
        s.shadow_db = draw_shadow(rsu.tech, s.los, rng, params);
        s.last_shadow_pos = new_pos;
    }
    s.fading_linear = draw_fading(rsu.tech, rng, params);
    s.path_loss_db = path_loss(rsu.tech, d, s.los, s.shadow_db, params);
    return s;
}

} // namespace v2n
