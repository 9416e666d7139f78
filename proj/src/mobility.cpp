#include "v2n/mobility.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "v2n/errors.hpp"
#include "v2n/format.hpp"

namespace v2n {

double MobilityTrace::duration() const
{
    if (samples.empty()) {
        return 0.0;
    }
    const double span = samples.back().t - samples.front().t;
    if (samples.size() < 2) {
        return span;
    }
    const double step = span / static_cast<double>(samples.size() - 1);
    // Uniform traces cover one extra step after the last sample.
    bool uniform = dt > 0.0;
    if (!uniform) {
        uniform = true;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (std::abs((samples[i].t - samples[i - 1].t) - step) > 1e-6 * std::max(step, 1.0)) {
                uniform = false;
                break;
            }
        }
    }
    return uniform ? span + step : span;
}

double MobilityTrace::max_speed() const
{
    double v = 0.0;
    for (const auto& s : samples) {
        v = std::max(v, s.speed);
    }
    return v;
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        auto b = field.find_first_not_of(" \t");
        auto e = field.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_number(const std::string& text, std::size_t line, const char* column)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw TraceError("invalid number '" + text + "' in column " + column + " at line " + std::to_string(line));
    }
    return v;
}

} // namespace

MobilityTrace parse_trace(std::istream& in, const TraceParseOptions& options)
{
    static constexpr std::array<const char*, 5> kColumns{"t_s", "vehicle_id", "x_m", "y_m", "speed_mps"};

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            header = split_csv(line);
            break;
        }
    }
    if (header.empty()) {
        throw TraceError("empty trace");
    }
    // Tolerate a UTF-8 byte order mark.
    if (header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
        header[0].erase(0, 3);
    }

    std::array<std::size_t, kColumns.size()> col{};
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        auto it = std::find(header.begin(), header.end(), kColumns[c]);
        if (it == header.end()) {
            throw TraceError(std::string("missing column '") + kColumns[c] + "'");
        }
        col[c] = static_cast<std::size_t>(it - header.begin());
    }

    MobilityTrace trace;
    bool have_vehicle = !options.vehicle_id.empty();
    if (have_vehicle) {
        trace.vehicle_id = options.vehicle_id;
    }
    double prev_t = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() < header.size()) {
            throw TraceError("expected " + std::to_string(header.size()) + " fields at line " + std::to_string(line_no));
        }
        const auto& vid = fields[col[1]];
        if (!have_vehicle) {
            trace.vehicle_id = vid;
            have_vehicle = true;
        } else if (vid != trace.vehicle_id) {
            if (!options.vehicle_id.empty()) {
                continue;
            }
            throw TraceError("second vehicle '" + vid + "' at line " + std::to_string(line_no) +
                             " (a trace must describe a single vehicle)");
        }
        TraceSample s;
        s.t = parse_number(fields[col[0]], line_no, kColumns[0]);
        s.position.x = parse_number(fields[col[2]], line_no, kColumns[2]);
        s.position.y = parse_number(fields[col[3]], line_no, kColumns[3]);
        s.speed = parse_number(fields[col[4]], line_no, kColumns[4]);
        if (s.t < 0.0) {
            throw TraceError("negative timestamp at line " + std::to_string(line_no));
        }
        if (!trace.samples.empty() && !(s.t > prev_t)) {
            throw TraceError("non-monotone timestamp at line " + std::to_string(line_no));
        }
        if (s.speed < 0.0) {
            throw TraceError("negative speed at line " + std::to_string(line_no));
        }
        prev_t = s.t;
        trace.samples.push_back(s);
    }
    if (trace.samples.empty()) {
        throw TraceError("empty trace");
    }
    return trace;
}

MobilityTrace parse_trace_file(const std::filesystem::path& path, const TraceParseOptions& options)
{
    std::ifstream in(path);
    if (!in) {
        throw TraceError("cannot open trace file " + path.string());
    }
    return parse_trace(in, options);
}

void write_trace(std::ostream& out, const MobilityTrace& trace)
{
    out << "t_s,vehicle_id,x_m,y_m,speed_mps\n";
    for (const auto& s : trace.samples) {
        out << format_double(s.t) << ',' << trace.vehicle_id << ',' << format_double(s.position.x) << ','
            << format_double(s.position.y) << ',' << format_double(s.speed) << '\n';
    }
}

// ------------------------------------------------------------- resampling

MobilityTrace resample(const MobilityTrace& trace, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw TraceError("resample step must be positive");
    }
    if (trace.samples.empty()) {
        throw TraceError("empty trace");
    }
    const double t0 = trace.samples.front().t;
    const double span = trace.samples.back().t - t0;
    if (dt > span * (1.0 + 1e-12)) {
        throw TraceError("resample step larger than trace span");
    }
    const auto n = static_cast<std::size_t>(std::floor(span / dt + 1e-9)) + 1;
    const double snap = 1e-9 * dt;

    MobilityTrace out;
    out.vehicle_id = trace.vehicle_id;
    out.dt = dt;
    out.samples.reserve(n);
    std::size_t seg = 0;
    const auto& in = trace.samples;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        while (seg + 1 < in.size() && in[seg + 1].t <= t + snap) {
            ++seg;
        }
        Position p;
        if (std::abs(in[seg].t - t) <= snap || seg + 1 == in.size()) {
            p = in[seg].position;
        } else {
            const double frac = (t - in[seg].t) / (in[seg + 1].t - in[seg].t);
            p = lerp(in[seg].position, in[seg + 1].position, frac);
        }
        out.samples.push_back({t, p, 0.0});
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (n == 1) {
            break;
        }
        const std::size_t a = (k + 1 < n) ? k : k - 1;
        out.samples[k].speed = distance(out.samples[a].position, out.samples[a + 1].position) / dt;
    }
    return out;
}

// ------------------------------------------------------ synthetic grid trip

bool on_grid(const GridSpec& grid, Position p, double tol)
{
    const double lo_x = grid.origin.x;
    const double lo_y = grid.origin.y;
    const double hi_x = lo_x + grid.blocks * grid.block_m;
    const double hi_y = lo_y + grid.blocks * grid.block_m;
    if (p.x < lo_x - tol || p.x > hi_x + tol || p.y < lo_y - tol || p.y > hi_y + tol) {
        return false;
    }
    auto on_line = [&](double v, double lo) {
        const double k = std::round((v - lo) / grid.block_m);
        return std::abs(v - (lo + k * grid.block_m)) <= tol;
    };
    return on_line(p.x, lo_x) || on_line(p.y, lo_y);
}

namespace {

struct Node {
    int i = 0;
    int j = 0;
    friend bool operator==(Node, Node) = default;
};

class GridWalker {
public:
    GridWalker(const RandomTripParams& p, RngStream& rng) : p_(p), rng_(rng)
    {
        from_ = random_node();
        dest_ = from_;
        enter_next_edge();
    }

    Position position() const
    {
        const Position a = pos(from_);
        const Position b = pos(to_);
        return lerp(a, b, s_ / p_.grid.block_m);
    }

    double speed() const { return v_; }
    int intersections() const { return intersections_; }
    int stops() const { return stops_; }

    void advance(double dt)
    {
        if (stop_left_ > 0.0) {
            stop_left_ -= dt;
            if (stop_left_ < 1e-9) {
                stop_left_ = 0.0;
            }
            return;
        }
        const double len = p_.grid.block_m;
        const double rem = len - s_;
        double cap = p_.v_max_mps;
        if (stop_at_end_) {
            cap = std::min(cap, std::sqrt(2.0 * p_.accel_mps2 * rem));
        }
        double v_new = std::min(v_ + p_.accel_mps2 * dt, cap);
        v_new = std::max(v_new, std::max(0.0, v_ - p_.accel_mps2 * dt * 4.0));
        v_new = std::min(v_new, p_.v_max_mps);
        double ds = 0.5 * (v_ + v_new) * dt;
        v_ = v_new;

        if (stop_at_end_) {
            if (ds >= rem || rem - ds < 0.25) {
                arrive(true);
                return;
            }
            s_ += ds;
            return;
        }
        while (ds >= len - s_) {
            ds -= len - s_;
            arrive(false);
            if (stop_left_ > 0.0) {
                return;
            }
        }
        s_ += ds;
    }

private:
    Position pos(Node n) const
    {
        return {p_.grid.origin.x + n.i * p_.grid.block_m, p_.grid.origin.y + n.j * p_.grid.block_m};
    }

    Node random_node()
    {
        const auto side = static_cast<std::uint64_t>(p_.grid.blocks + 1);
        return {static_cast<int>(rng_.below(side)), static_cast<int>(rng_.below(side))};
    }

    void arrive(bool stopping)
    {
        ++intersections_;
        from_ = to_;
        s_ = 0.0;
        if (stopping) {
            ++stops_;
            v_ = 0.0;
            stop_left_ = p_.stop_time_s;
        }
        enter_next_edge();
    }

    void enter_next_edge()
    {
        while (dest_ == from_) {
            dest_ = random_node();
        }
        std::array<Node, 2> options{};
        int n = 0;
        if (dest_.i != from_.i) {
            options[n++] = {from_.i + (dest_.i > from_.i ? 1 : -1), from_.j};
        }
        if (dest_.j != from_.j) {
            options[n++] = {from_.i, from_.j + (dest_.j > from_.j ? 1 : -1)};
        }
        to_ = options[n == 1 ? 0 : rng_.below(2)];
        stop_at_end_ = rng_.bernoulli(p_.stop_prob);
    }

    const RandomTripParams& p_;
    RngStream& rng_;
    Node from_;
    Node to_;
    Node dest_;
    double s_ = 0.0;
    double v_ = 0.0;
    double stop_left_ = 0.0;
    bool stop_at_end_ = false;
    int intersections_ = 0;
    int stops_ = 0;
};

} // namespace

SyntheticTrip synth_randomtrip(const RandomTripParams& params, RngStream rng)
{
    if (params.grid.blocks < 1) {
        throw ConfigError("grid_blocks: need at least one block");
    }
    if (!(params.grid.block_m > 0.0)) {
        throw ConfigError("grid_block_m: must be positive");
    }
    if (!(params.duration_s > 0.0)) {
        throw ConfigError("duration_s: must be positive");
    }
    if (!(params.dt_s > 0.0)) {
        throw ConfigError("dt_s: must be positive");
    }
    if (!(params.v_max_mps > 0.0)) {
        throw ConfigError("v_max_mps: must be positive");
    }
    if (!(params.accel_mps2 > 0.0)) {
        throw ConfigError("accel_mps2: must be positive");
    }
    if (!(params.stop_prob >= 0.0 && params.stop_prob <= 1.0)) {
        throw ConfigError("stop_prob: must be in [0, 1]");
    }
    if (params.stop_time_s < 0.0) {
        throw ConfigError("stop_time_s: must be >= 0");
    }

    const auto n = static_cast<std::size_t>(std::llround(params.duration_s / params.dt_s));
    SyntheticTrip trip;
    trip.trace.dt = params.dt_s;
    trip.trace.samples.reserve(n);
    GridWalker walker(params, rng);
    for (std::size_t k = 0; k < n; ++k) {
        trip.trace.samples.push_back({static_cast<double>(k) * params.dt_s, walker.position(), walker.speed()});
        walker.advance(params.dt_s);
    }
    trip.intersections = walker.intersections();
    trip.stops = walker.stops();
    return trip;
}

MobilityTrace synth_randomtrip_trace(const RandomTripParams& params, RngStream rng)
{
    return synth_randomtrip(params, std::move(rng)).trace;
}

} // namespace v2n
