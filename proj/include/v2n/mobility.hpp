#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "v2n/geometry.hpp"
#include "v2n/rng.hpp"

namespace v2n {

struct TraceSample {
    double t = 0.0;     // s
    Position position;  // m
    double speed = 0.0; // m/s
};

/// Time-ordered trajectory of the single target vehicle.
struct MobilityTrace {
    std::string vehicle_id = "veh0";
    std::vector<TraceSample> samples;
    /// Uniform sample spacing, or 0 when the trace is not uniformly sampled.
    double dt = 0.0;

    std::size_t size() const { return samples.size(); }
    /// Covered time: span plus one step for uniform traces, span otherwise.
    double duration() const;
    double max_speed() const;
};

struct TraceParseOptions {
    /// Keep only rows of this vehicle. Empty: the trace must hold exactly one
    /// vehicle.
    std::string vehicle_id;
};

/// Parses the trace CSV (`t_s,vehicle_id,x_m,y_m,speed_mps`). Columns may
/// appear in any order; extra columns are ignored. Throws TraceError naming
/// the offending line or column.
MobilityTrace parse_trace(std::istream& in, const TraceParseOptions& options = {});
MobilityTrace parse_trace_file(const std::filesystem::path& path, const TraceParseOptions& options = {});

/// Writes the trace CSV with round-trip exact numbers.
void write_trace(std::ostream& out, const MobilityTrace& trace);

/// Linear interpolation onto t0, t0+dt, ... up to the last sample time.
/// Speeds are recomputed as finite-difference magnitudes (forward, backward
/// for the final sample). Throws TraceError when dt <= 0 or dt exceeds the
/// trace span.
MobilityTrace resample(const MobilityTrace& trace, double dt);

/// Manhattan street grid: streets at origin + k*block_m, k = 0..blocks, in
/// both directions.
struct GridSpec {
    int blocks = 4;
    double block_m = 200.0;
    Position origin{100.0, 100.0};
};

struct RandomTripParams {
    GridSpec grid;
    double duration_s = 250.0;
    double dt_s = 0.1;
    double v_max_mps = 13.9;
    double accel_mps2 = 2.0;
    /// Probability of halting at an intersection (traffic-light surrogate).
    double stop_prob = 0.3;
    double stop_time_s = 30.0;
};

struct SyntheticTrip {
    MobilityTrace trace;
    int intersections = 0; // intersections reached, excluding the origin
    int stops = 0;
};

/// Random-trip vehicle on the grid: random origin and destination
/// intersections, Manhattan routing with a uniform choice among the
/// directions that approach the destination, a new destination on arrival.
/// At every intersection the vehicle halts for stop_time_s with probability
/// stop_prob; it accelerates and brakes at accel_mps2 and never exceeds
/// v_max_mps. Produces round(duration/dt) samples starting at t = 0.
/// Throws ConfigError on a degenerate grid or non-positive duration/speed.
SyntheticTrip synth_randomtrip(const RandomTripParams& params, RngStream rng);
MobilityTrace synth_randomtrip_trace(const RandomTripParams& params, RngStream rng);

/// True when the point lies on one of the grid's street segments.
bool on_grid(const GridSpec& grid, Position p, double tol = 1e-6);

} // namespace v2n
