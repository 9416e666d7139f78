#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "v2n/config.hpp"
#include "v2n/errors.hpp"

using namespace v2n;

namespace {

std::string config_error(SimConfig c)
{
    try {
        validate(c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string override_error(std::string_view assignment)
{
    SimConfig c;
    try {
        apply_override(c, assignment);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("defaults are valid and match the reference scenario")
{
    const SimConfig c;
    CHECK(config_error(c).empty());
    CHECK(c.lambda_lte == 4.0);
    CHECK(c.mmw_radio.tx_power_dbm.value == 30.0);
    CHECK(c.lte_radio.tx_power_dbm.value == 46.0);
    CHECK(c.dt_s() == 0.1);
    CHECK(c.trip.duration_s == 250.0);
    CHECK(c.n_drops == 200);
    CHECK(c.lambda_mmw_grid.size() == 10);
    CHECK(c.array_grid.size() == 3);
    CHECK(slot_steps(0.0, 0.1) == 0);
    CHECK(slot_steps(0.1, 0.1) == 1);
    CHECK(slot_steps(1.0, 0.1) == 10);
}

TEST_CASE("set and get round trip for every key")
{
    const SimConfig c;
    std::set<std::string> names;
    for (const auto& k : config_keys()) {
        CHECK(names.insert(k.name).second);
        SimConfig d;
        const auto v = get_config_value(c, k.name);
        set_config_value(d, k.name, v);
        CHECK(get_config_value(d, k.name) == v);
    }
    CHECK(names.count("lambda_mmw") == 1);
    CHECK(names.count("tx_power_mmw_dbm") == 1);
    CHECK(names.count("bandwidth_lte_hz") == 1);
    CHECK(names.count("noise_figure_db") == 1);
    CHECK(names.count("outage_threshold_db") == 1);
    CHECK(names.count("t_tr_s") == 1);
}

TEST_CASE("config text")
{
    SimConfig c;
    apply_config_text(c, "# comment\n"
                         "lambda_mmw = 70   # trailing\n"
                         "\n"
                         "bandwidth_lte_hz = 20e6\n"
                         "lambda_mmw_grid = 10:50:20\n"
                         "array_grid = 4x4, 16x64\n"
                         "t_tr_grid = 0, 0.1, 1\n"
                         "mmw_fading = off\n");
    CHECK(c.lambda_mmw == 70.0);
    CHECK(c.lte_radio.bandwidth_hz == 20e6);
    CHECK(c.lambda_mmw_grid == std::vector<double>{10, 30, 50});
    REQUIRE(c.array_grid.size() == 2);
    CHECK(c.array_grid[0] == ArrayPair{4, 4});
    CHECK(c.array_grid[1] == ArrayPair{16, 64});
    CHECK(c.t_tr_grid == std::vector<double>{0, 0.1, 1});
    CHECK_FALSE(c.channel.mmw_fading);

    SimConfig d;
    CHECK_THROWS_AS(apply_config_text(d, "lambda_mmw 70\n"), ConfigError);

    // Canonical text replays to the same config.
    SimConfig e;
    apply_config_text(e, canonical_config_text(c));
    CHECK(canonical_config_text(e) == canonical_config_text(c));
    CHECK(config_hash(e) == config_hash(c));
}

TEST_CASE("config file")
{
    const auto path = std::filesystem::temp_directory_path() / "v2n_test_config.cfg";
    {
        std::ofstream out(path);
        out << "n_drops = 7\nroot_seed = 99\n";
    }
    const auto c = load_config_file(path);
    CHECK(c.n_drops == 7);
    CHECK(c.root_seed == 99);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
}

TEST_CASE("override errors name the key")
{
    CHECK(override_error("lambda_mmw=abc").find("lambda_mmw") == 0);
    CHECK(override_error("nonsense=1").find("unknown key 'nonsense'") != std::string::npos);
    CHECK(override_error("lambda_mmw").find("KEY=VALUE") != std::string::npos);
    CHECK(override_error("array_grid=4by4").find("array_grid") == 0);
    CHECK(override_error("mmw_los_mode=sometimes").find("mmw_los_mode") == 0);
    CHECK(override_error("lambda_mmw_grid=50:10:10").find("lambda_mmw_grid") == 0);
    CHECK(override_error("lambda_mmw= 40 ").empty());
}

TEST_CASE("validate")
{
    SimConfig c;
    c.lambda_mmw = -5;
    CHECK(config_error(c) == "lambda_mmw: density must be >= 0");

    c = {};
    c.t_tr_s = 0.15;
    CHECK(config_error(c).find("t_tr_s") == 0);
    c.t_tr_s = 1.0;
    CHECK(config_error(c).empty());

    c = {};
    c.trip.dt_s = 0.0;
    CHECK(config_error(c).find("dt_s") == 0);

    c = {};
    c.lambda_mmw_grid.clear();
    CHECK(config_error(c).find("lambda_mmw_grid") == 0);

    c = {};
    c.n_drops = 0;
    CHECK(config_error(c).find("n_drops") == 0);

    c = {};
    c.trace_source = TraceSource::File;
    CHECK(config_error(c).find("trace_path") == 0);
}

TEST_CASE("config hash tracks effective parameters")
{
    const SimConfig a;
    SimConfig b;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.workers = 8;
    CHECK(config_hash(a) == config_hash(b));
    for (const auto& k : config_keys()) {
        if (!k.effective) {
            continue;
        }
        SimConfig c;
        const auto before = config_hash(c);
        // Nudge each numeric key and check that the hash moves.
        const auto v = get_config_value(c, k.name);
        try {
            set_config_value(c, k.name, std::to_string(std::stod(v) + 1.0));
        } catch (const std::exception&) {
            continue;
        }
        CHECK_MESSAGE(config_hash(c) != before, k.name);
    }
}
