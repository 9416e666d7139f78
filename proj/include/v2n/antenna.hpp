#pragma once

#include <utility>

#include "v2n/deployment.hpp"
#include "v2n/geometry.hpp"
#include "v2n/units.hpp"

namespace v2n {

/// Constants of the two-lobe sectored pattern.
struct AntennaParams {
    double side_lobe_drop_db = 20.0;   // side lobe sits this far below the main lobe
    double side_lobe_floor_dbi = -10.0;
    double beamwidth_coeff_deg = 102.0; // beamwidth = coeff / sqrt(elements)
};

/// Sectored model of a uniform planar array: a flat main lobe of gain
/// 10 log10(elements) over `beamwidth_rad`, a flat side lobe elsewhere.
struct ArrayConfig {
    int elements = 1;
    Decibel main_gain_db{0.0};
    Decibel side_gain_db{0.0};
    double beamwidth_rad = kTwoPi;

    bool omnidirectional() const { return elements == 1; }
};

/// Throws ConfigError when elements < 1. Sizes outside {1, 4, 16, 64} are
/// accepted with a warning on stderr.
ArrayConfig make_array(int elements, const AntennaParams& params = {});

/// Gain at angular offset from boresight (wrapped into [-pi, pi]).
Decibel pattern_gain(const ArrayConfig& array, double offset_rad);

struct BeamState {
    double vehicle_boresight = 0.0; // rad, [0, 2*pi)
    double rsu_boresight = 0.0;     // rad, [0, 2*pi)
    long aligned_at_slot = 0;
    int serving_rsu = -1;
    bool lost = false;
};

/// Points both beams along the vehicle-RSU line. Coincident positions leave
/// both boresights at 0.
BeamState realign(Position vehicle_pos, const Rsu& rsu, long slot);

/// Combined TX+RX gain of the fixed beams for the current geometry. Once the
/// offset at either end exceeds its half-beamwidth the beam is marked lost,
/// and both ends contribute side-lobe gain until the next realign().
std::pair<Decibel, BeamState> tracked_gain(const BeamState& beam, Position vehicle_pos, const Rsu& rsu,
                                           const ArrayConfig& vehicle_array, const ArrayConfig& rsu_array);

/// Gain of a perfectly aligned link.
inline Decibel aligned_gain(const ArrayConfig& vehicle_array, const ArrayConfig& rsu_array)
{
    return vehicle_array.main_gain_db + rsu_array.main_gain_db;
}

} // namespace v2n
