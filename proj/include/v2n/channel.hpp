#pragma once

#include "v2n/deployment.hpp"
#include "v2n/geometry.hpp"
#include "v2n/rng.hpp"
#include "v2n/units.hpp"

namespace v2n {

/// How the LOS/NLOS state of a link is drawn. `Stochastic` uses the
/// technology's distance-dependent LOS probability; the forced modes pin the
/// state (used for closed-form checks).
enum class LosMode { Stochastic, AlwaysLos, AlwaysNlos };

/// Unit the LTE LOS formula is evaluated in. Kilometers matches the unit of
/// the LTE path-loss coefficients and keeps P_LOS near 1 at urban ranges.
enum class DistanceUnit { Meters, Kilometers };

/// Log-distance law PL = intercept + slope * log10(d).
struct PathLossLaw {
    double intercept_db = 0.0;
    double slope_db = 0.0;
};

struct ChannelParams {
    // mmWave, 28 GHz dense urban
    double a_los_per_m = 0.0149;
    double sigma_los_db = 5.8;
    double sigma_nlos_db = 8.7;
    // Slope multiplies 10*log10(d), d in meters.
    PathLossLaw mmw_los{61.4, 2.0};
    PathLossLaw mmw_nlos{72.0, 2.92};
    // LTE, 2 GHz; slope multiplies log10(d), d in km.
    PathLossLaw lte_los{103.4, 24.2};
    PathLossLaw lte_nlos{131.1, 42.8};

    double los_corr_m = 10.0;
    double shadow_corr_m = 10.0;
    double d_min_m = 1.0;

    DistanceUnit lte_los_unit = DistanceUnit::Kilometers;
    LosMode lte_los_mode = LosMode::Stochastic;
    LosMode mmw_los_mode = LosMode::Stochastic;
    bool lte_fading = true;
    bool mmw_fading = true;
};

/// Per-(vehicle, RSU) channel realization.
struct LinkState {
    int rsu_id = 0;
    Tech tech = Tech::Lte;
    bool los = true;
    Decibel shadow_db{0.0};        // always 0 for LTE
    LinearRatio fading_linear{1.0};
    Decibel path_loss_db{0.0};     // includes shadowing
    Position last_resample_pos;    // where the LOS state was last drawn
    Position last_shadow_pos;      // where the shadowing was last drawn
};

/// Independent substreams feeding one link.
struct LinkStreams {
    RngStream los;
    RngStream shadow;
    RngStream fading;
};

/// 3GPP LOS probability min(18/d, 1)(1 - e^{-d/36}) + e^{-d/36}.
double lte_los_probability(double d_m);
double lte_los_probability(double d_m, DistanceUnit unit);

/// PL = intercept + slope * log10(d_km), d clamped below at d_min.
Decibel lte_path_loss(double d_m, bool los, const ChannelParams& params = {});

/// e^{-a d}.
double mmwave_los_probability(double d_m, double a_los_per_m = 0.0149);

/// PL = intercept + slope * 10 * log10(d_m) + shadow, d clamped below at d_min.
Decibel mmwave_path_loss(double d_m, bool los, Decibel shadow_db, const ChannelParams& params = {});

/// Zero-mean Gaussian (dB) with the LOS or NLOS deviation.
Decibel sample_shadowing(bool los, RngStream& rng, const ChannelParams& params = {});

/// Unit-mean exponential power gain (Rayleigh amplitude squared).
LinearRatio sample_fading(RngStream& rng);

double los_probability(Tech tech, double d_m, const ChannelParams& params);

/// Draws a fresh link state for a vehicle at `pos`.
LinkState initial_link_state(const Rsu& rsu, Position pos, LinkStreams& rng, const ChannelParams& params);

/// Advances a link by one time step. The LOS flag is redrawn once the vehicle
/// has moved at least los_corr_m since the previous draw, and the shadowing
/// whenever the LOS flag is redrawn or the vehicle has moved at least
/// shadow_corr_m. Fading is redrawn and the path loss recomputed every call.
LinkState evolve_link_state(const LinkState& state, Position new_pos, const Rsu& rsu, LinkStreams& rng,
                            const ChannelParams& params);

} // namespace v2n
