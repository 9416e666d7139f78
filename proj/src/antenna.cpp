#include "v2n/antenna.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "v2n/errors.hpp"

namespace v2n {

ArrayConfig make_array(int elements, const AntennaParams& params)
{
    if (elements < 1) {
        throw ConfigError("antenna array needs at least one element, got " + std::to_string(elements));
    }
    if (elements != 1 && elements != 4 && elements != 16 && elements != 64) {
        std::cerr << "warning: unusual array size " << elements << " (expected 1, 4, 16 or 64)\n";
    }
    ArrayConfig a;
    a.elements = elements;
    if (elements == 1) {
        return a;
    }
    const double main = 10.0 * std::log10(static_cast<double>(elements));
    a.main_gain_db = {main};
    a.side_gain_db = {std::max(main - params.side_lobe_drop_db, params.side_lobe_floor_dbi)};
    if (a.side_gain_db > a.main_gain_db) {
        a.side_gain_db = a.main_gain_db;
    }
    a.beamwidth_rad = params.beamwidth_coeff_deg / std::sqrt(static_cast<double>(elements)) * std::numbers::pi / 180.0;
    return a;
}

Decibel pattern_gain(const ArrayConfig& array, double offset_rad)
{
    if (array.beamwidth_rad >= kTwoPi) {
        return array.main_gain_db;
    }
    return std::abs(wrap_to_pi(offset_rad)) <= 0.5 * array.beamwidth_rad ? array.main_gain_db : array.side_gain_db;
}

BeamState realign(Position vehicle_pos, const Rsu& rsu, long slot)
{
    BeamState b;
    b.vehicle_boresight = bearing(vehicle_pos, rsu.position);
    b.rsu_boresight = bearing(rsu.position, vehicle_pos);
    b.aligned_at_slot = slot;
    b.serving_rsu = rsu.id;
    b.lost = false;
    return b;
}

std::pair<Decibel, BeamState> tracked_gain(const BeamState& beam, Position vehicle_pos, const Rsu& rsu,
                                           const ArrayConfig& vehicle_array, const ArrayConfig& rsu_array)
{
    BeamState next = beam;
    if (!next.lost) {
        const double v_off = bearing(vehicle_pos, rsu.position) - beam.vehicle_boresight;
        const double r_off = bearing(rsu.position, vehicle_pos) - beam.rsu_boresight;
        const bool v_out = std::abs(wrap_to_pi(v_off)) > 0.5 * vehicle_array.beamwidth_rad;
        const bool r_out = std::abs(wrap_to_pi(r_off)) > 0.5 * rsu_array.beamwidth_rad;
        next.lost = v_out || r_out;
    }
    if (next.lost) {
        return {vehicle_array.side_gain_db + rsu_array.side_gain_db, next};
    }
    return {aligned_gain(vehicle_array, rsu_array), next};
}

} // namespace v2n
