#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "v2n/errors.hpp"
#include "v2n/mobility.hpp"

using namespace v2n;

namespace {

std::string error_of(const std::string& csv)
{
    std::istringstream in(csv);
    try {
        parse_trace(in);
    } catch (const TraceError& e) {
        return e.what();
    }
    return {};
}

MobilityTrace parse(const std::string& csv, const TraceParseOptions& opts = {})
{
    std::istringstream in(csv);
    return parse_trace(in, opts);
}

} // namespace

TEST_CASE("parse_trace")
{
    const auto t = parse("t_s,vehicle_id,x_m,y_m,speed_mps\n"
                         "0,car,0,0,0\n"
                         "0.5,car,1,0,2\n"
                         "1.0,car,2,0,2\n");
    CHECK(t.size() == 3);
    CHECK(t.vehicle_id == "car");
    CHECK(t.samples[1].position.x == 1.0);
    CHECK(t.samples[2].speed == 2.0);

    // Column order is free and unknown columns are ignored.
    const auto u = parse("speed_mps,y_m,extra,x_m,t_s,vehicle_id\n3,4,z,5,0,v\n");
    CHECK(u.samples[0].position.x == 5.0);
    CHECK(u.samples[0].position.y == 4.0);
    CHECK(u.samples[0].speed == 3.0);
}

TEST_CASE("parse_trace errors")
{
    CHECK(error_of("t_s,vehicle_id,x_m,y_m,speed_mps\n5.0,a,0,0,1\n4.0,a,0,0,1\n") ==
          "non-monotone timestamp at line 3");
    CHECK(error_of("") == "empty trace");
    CHECK(error_of("t_s,vehicle_id,x_m,y_m,speed_mps\n") == "empty trace");
    CHECK(error_of("t_s,vehicle_id,x_m,y_m\n0,a,0,0\n").find("missing column 'speed_mps'") != std::string::npos);
    CHECK(error_of("t_s,vehicle_id,x_m,y_m,speed_mps\n0,a,0,0,-1\n") == "negative speed at line 2");
    CHECK(error_of("t_s,vehicle_id,x_m,y_m,speed_mps\n0,a,0,0,1\n0,a,0,0,1\n") == "non-monotone timestamp at line 3");
    CHECK_FALSE(error_of("t_s,vehicle_id,x_m,y_m,speed_mps\n0,a,0,0,1\n1,b,0,0,1\n").empty());

    // A vehicle filter selects one of several vehicles.
    TraceParseOptions opts;
    opts.vehicle_id = "b";
    const auto t = parse("t_s,vehicle_id,x_m,y_m,speed_mps\n0,a,0,0,1\n0,b,7,0,1\n1,b,8,0,1\n", opts);
    CHECK(t.size() == 2);
    CHECK(t.samples[0].position.x == 7.0);
}

TEST_CASE("trace serialization round trips")
{
    RandomTripParams p;
    p.duration_s = 30.0;
    const auto trace = synth_randomtrip_trace(p, RngStream(4));
    std::stringstream buf;
    write_trace(buf, trace);
    const auto back = parse_trace(buf);
    REQUIRE(back.size() == trace.size());
    CHECK(back.vehicle_id == trace.vehicle_id);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(back.samples[i].t == trace.samples[i].t);
        CHECK(back.samples[i].position == trace.samples[i].position);
        CHECK(back.samples[i].speed == trace.samples[i].speed);
    }
}

TEST_CASE("resample")
{
    MobilityTrace two;
    two.samples = {{0.0, {0, 0}, 10.0}, {10.0, {100, 0}, 10.0}};
    const auto r = resample(two, 1.0);
    REQUIRE(r.size() == 11);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.samples[i].t == doctest::Approx(static_cast<double>(i)));
        CHECK(r.samples[i].position.x == doctest::Approx(10.0 * static_cast<double>(i)));
        CHECK(r.samples[i].speed == doctest::Approx(10.0));
    }
    CHECK(r.dt == 1.0);

    // Already uniform at dt: unchanged.
    const auto again = resample(r, 1.0);
    REQUIRE(again.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(again.samples[i].position == r.samples[i].position);
        CHECK(again.samples[i].t == r.samples[i].t);
    }

    CHECK_THROWS_AS(resample(two, 0.0), TraceError);
    CHECK_THROWS_AS(resample(two, -1.0), TraceError);
    CHECK_THROWS_AS(resample(two, 11.0), TraceError);
}

TEST_CASE("resampled displacement respects the speed limit")
{
    RandomTripParams p;
    p.dt_s = 0.5;
    const auto coarse = synth_randomtrip_trace(p, RngStream(13));
    const auto fine = resample(coarse, 0.1);
    for (std::size_t i = 1; i < fine.size(); ++i) {
        CHECK(distance(fine.samples[i - 1].position, fine.samples[i].position) <= p.v_max_mps * 0.1 * 1.05);
    }
}

TEST_CASE("synthetic random trip")
{
    RandomTripParams p;
    const auto trip = synth_randomtrip(p, RngStream(1));
    const auto& trace = trip.trace;
    CHECK(trace.size() == 2500);
    CHECK(trace.duration() == doctest::Approx(250.0));
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& s = trace.samples[i];
        CHECK(s.speed <= p.v_max_mps + 1e-9);
        CHECK(on_grid(p.grid, s.position));
        if (i > 0) {
            // Speed agrees with the displacement within 20%.
            const double moved = distance(trace.samples[i - 1].position, s.position);
            CHECK(moved <= p.v_max_mps * p.dt_s * 1.2 + 1e-9);
        }
    }

    // Same seed, same trace.
    const auto again = synth_randomtrip_trace(p, RngStream(1));
    REQUIRE(again.size() == trace.size());
    for (std::size_t i = 0; i < trace.size(); i += 97) {
        CHECK(again.samples[i].position == trace.samples[i].position);
    }
}

TEST_CASE("no stops gives constant cruising speed on a straight run")
{
    RandomTripParams p;
    p.grid.blocks = 1;
    p.grid.block_m = 500.0;
    p.stop_prob = 0.0;
    p.duration_s = 20.0;
    const auto trace = synth_randomtrip_trace(p, RngStream(3));
    // Ramp-up takes v_max / accel seconds; after it the vehicle cruises.
    const auto ramp = static_cast<std::size_t>(std::ceil(p.v_max_mps / p.accel_mps2 / p.dt_s)) + 1;
    for (std::size_t i = ramp; i < trace.size(); ++i) {
        CHECK(trace.samples[i].speed == doctest::Approx(p.v_max_mps));
    }
}

TEST_CASE("stop frequency converges to stop_prob")
{
    RandomTripParams p;
    p.stop_time_s = 1.0;
    p.duration_s = 2000.0;
    int stops = 0, seen = 0;
    for (std::uint64_t s = 0; seen < 1000; ++s) {
        const auto trip = synth_randomtrip(p, RngStream(100 + s));
        stops += trip.stops;
        seen += trip.intersections;
    }
    CHECK(static_cast<double>(stops) / seen == doctest::Approx(p.stop_prob).epsilon(0.1));
    CHECK(std::abs(static_cast<double>(stops) / seen - p.stop_prob) < 0.03);
}

TEST_CASE("degenerate grid is rejected")
{
    RandomTripParams p;
    p.grid.blocks = 0;
    CHECK_THROWS_AS(synth_randomtrip(p, RngStream(1)), ConfigError);
    p.grid.blocks = 2;
    p.duration_s = 0;
    CHECK_THROWS_AS(synth_randomtrip(p, RngStream(1)), ConfigError);
}
