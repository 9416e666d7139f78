#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "v2n/format.hpp"
#include "v2n/geometry.hpp"
#include "v2n/rng.hpp"
#include "v2n/units.hpp"

using namespace v2n;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b)
{
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

std::vector<double> uniforms(RngStream s, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
        x = s.uniform();
    }
    return v;
}

} // namespace

TEST_CASE("db_to_linear")
{
    CHECK(db_to_linear(Decibel{0.0}).value == 1.0);
    CHECK(db_to_linear(Decibel{30.0}).value == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(db_to_linear(Decibel{-3.0103}).value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("dB round trip")
{
    RngStream rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform(-200.0, 200.0);
        CHECK(std::abs(linear_to_db(db_to_linear(Decibel{x})).value - x) < 1e-9);
        const double mw = dbm_to_milliwatt(DbmPower{x});
        CHECK(std::abs(milliwatt_to_dbm(mw).value - x) < 1e-9);
    }
    CHECK(linear_to_db(LinearRatio{0.0}).value == kNegInf);
}

TEST_CASE("distance")
{
    CHECK(distance({0, 0}, {0, 0}) == 0.0);
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({10, 10}, {10, 110}) == 100.0);

    RngStream rng(5);
    for (int i = 0; i < 500; ++i) {
        Position a{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
        Position b{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
        Position c{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
        CHECK(distance(a, b) == distance(b, a));
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }
}

TEST_CASE("bearing and wrapping")
{
    CHECK(bearing({0, 0}, {1, 0}) == doctest::Approx(0.0));
    CHECK(bearing({0, 0}, {0, 1}) == doctest::Approx(kTwoPi / 4));
    CHECK(bearing({0, 0}, {-1, 0}) == doctest::Approx(kTwoPi / 2));
    CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(3 * kTwoPi / 4));
    CHECK(bearing({2, 2}, {2, 2}) == 0.0);
    CHECK(wrap_to_pi(3 * kTwoPi / 4) == doctest::Approx(-kTwoPi / 4));
    CHECK(wrap_to_two_pi(-kTwoPi / 4) == doctest::Approx(3 * kTwoPi / 4));
    const Position m = lerp({0, 0}, {10, 20}, 0.25);
    CHECK(m.x == doctest::Approx(2.5));
    CHECK(m.y == doctest::Approx(5.0));
}

TEST_CASE("stream replay is deterministic")
{
    const RngStream root(1234);
    auto a = derive_stream(root, "drop", 3);
    auto b = root.derive("drop", 3);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    // Derivation does not depend on how much the parent has consumed.
    RngStream used(1234);
    for (int i = 0; i < 17; ++i) {
        used.next_u64();
    }
    CHECK(used.derive("drop", 3).next_u64() == root.derive("drop", 3).next_u64());
    CHECK(root.derive("drop", 3).path_string() == root.derive("drop", 3).path_string());
    CHECK(root.derive("drop", 3).key() != root.derive("drop", 4).key());
    CHECK(RngStream(1).derive("drop", 3).key() != RngStream(2).derive("drop", 3).key());
}

TEST_CASE("sibling streams are uncorrelated")
{
    const RngStream root(2024);
    CHECK(std::abs(correlation(uniforms(root.derive("drop", 3), 10000), uniforms(root.derive("drop", 4), 10000))) < 0.05);
    CHECK(std::abs(correlation(uniforms(root.derive("fading", 0), 10000), uniforms(root.derive("shadow", 0), 10000))) <
          0.05);
    // Nested paths that share a prefix stay distinct.
    const auto x = root.derive("drop", 1).derive("lte", 2);
    const auto y = root.derive("drop", 2).derive("lte", 1);
    CHECK(std::abs(correlation(uniforms(x, 10000), uniforms(y, 10000))) < 0.05);
}

TEST_CASE("distribution moments")
{
    RngStream rng(77);
    const int n = 100000;
    double su = 0, sn = 0, sn2 = 0, se = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK_UNARY(u > 0.0);
        CHECK_UNARY(u < 1.0);
        su += u;
        const double z = rng.normal(0.0, 1.0);
        sn += z;
        sn2 += z * z;
        se += rng.exponential(2.0);
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.015);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(se / n == doctest::Approx(2.0).epsilon(0.02));

    double sp = 0;
    for (int i = 0; i < 10000; ++i) {
        sp += static_cast<double>(rng.poisson(1234.5));
    }
    CHECK(sp / 10000 == doctest::Approx(1234.5).epsilon(0.005));
    CHECK(rng.poisson(0.0) == 0);

    std::vector<int> hits(7, 0);
    for (int i = 0; i < 70000; ++i) {
        ++hits[rng.below(7)];
    }
    for (int h : hits) {
        CHECK(h == doctest::Approx(10000).epsilon(0.05));
    }
}

TEST_CASE("number formatting")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e9) == "1e+09");
    CHECK(format_double(12345.5) == "12345.5");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "NA");
    CHECK(format_double(kNegInf) == "-inf");
    CHECK(format_fixed(2.5, 1) == "2.5");
    CHECK(format_fixed(250.0, 1) == "250.0");
}
