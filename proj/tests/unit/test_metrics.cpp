#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "v2n/errors.hpp"
#include "v2n/metrics.hpp"
#include "v2n/rng.hpp"
#include "v2n/units.hpp"

using namespace v2n;

namespace {

TechSeries series(std::vector<double> rates, std::vector<double> snr = {})
{
    TechSeries s;
    s.tech = Tech::MmWave;
    if (snr.empty()) {
        snr.assign(rates.size(), 10.0);
    }
    s.rate_bps = std::move(rates);
    s.snr_db = std::move(snr);
    return s;
}

} // namespace

TEST_CASE("stability_index")
{
    CHECK(stability_index(std::vector<double>(100, 5e8)) == 0.0);
    std::vector<double> alt;
    for (int i = 0; i < 1000; ++i) {
        alt.push_back(i % 2 == 0 ? 0.0 : 2e9);
    }
    CHECK(stability_index(alt) == doctest::Approx(1.0));

    RateSeries rs;
    rs.values = {1, 2, 3, 4};
    // Population std of 1..4 is sqrt(1.25).
    CHECK(stability_index(rs) == doctest::Approx(std::sqrt(1.25) / 2.5));

    CHECK_THROWS_WITH_AS(stability_index(std::vector<double>(10, 0.0)), "undefined stability (zero mean)", MetricError);
    CHECK_THROWS_AS(stability_index(std::vector<double>{}), MetricError);

    RngStream rng(1);
    std::vector<double> v(500);
    for (auto& x : v) {
        x = rng.exponential(3.0);
    }
    std::vector<double> scaled = v;
    for (auto& x : scaled) {
        x *= 123.0;
    }
    CHECK(stability_index(scaled) == doctest::Approx(stability_index(v)));
}

TEST_CASE("outage_probability")
{
    CHECK(outage_probability(std::vector<double>(10, 10.0), 0.0) == 0.0);
    CHECK(outage_probability(std::vector<double>{-1, -2, 1, 2}, 0.0) == 0.5);
    // Strictly below.
    CHECK(outage_probability(std::vector<double>{0.0, 0.0}, 0.0) == 0.0);
    CHECK(outage_probability(std::vector<double>{kNegInf, 5.0}, 0.0) == 0.5);
    CHECK_THROWS_AS(outage_probability(std::vector<double>{}, 0.0), MetricError);

    RngStream rng(2);
    std::vector<double> snr(1000);
    for (auto& x : snr) {
        x = rng.normal(0, 10);
    }
    double prev = 0.0;
    for (double th = -40; th <= 40; th += 1.0) {
        const double p = outage_probability(snr, th);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("aggregate")
{
    CHECK_THROWS_AS(aggregate(std::vector<TechSeries>{}, 0.0), MetricError);

    SUBCASE("one drop")
    {
        const std::vector<TechSeries> d{series({1, 2, 3, 4}, {-1, 1, 1, 1})};
        const auto s = aggregate(d, 0.0);
        CHECK(s.n_drops == 1);
        CHECK(s.mean_rate_bps == 2.5);
        CHECK(s.rho_var == doctest::Approx(std::sqrt(1.25) / 2.5));
        CHECK(s.outage_prob == 0.25);
        CHECK(std::isnan(s.ci_rate));
        CHECK(std::isnan(s.ci_outage));
    }

    SUBCASE("identical drops")
    {
        const std::vector<TechSeries> d(5, series({1, 2, 3}, {-1, 1, 1}));
        const auto s = aggregate(d, 0.0);
        CHECK(s.n_drops == 5);
        CHECK(s.ci_rate == 0.0);
        CHECK(s.ci_outage == 0.0);
        CHECK(s.rho_var == doctest::Approx(stability_index(std::vector<double>{1, 2, 3})));
    }

    SUBCASE("pooled index spans drops")
    {
        const std::vector<TechSeries> d{series({1, 1}), series({3, 3})};
        const auto s = aggregate(d, 0.0);
        CHECK(s.rho_var == doctest::Approx(0.5));
        CHECK(s.rho_var_per_drop == 0.0);
    }

    SUBCASE("zero mean gives NaN index")
    {
        const std::vector<TechSeries> d{series({0, 0}, {kNegInf, kNegInf})};
        const auto s = aggregate(d, 0.0);
        CHECK(std::isnan(s.rho_var));
        CHECK(s.outage_prob == 1.0);
    }
}

TEST_CASE("aggregate is order independent")
{
    RngStream rng(5);
    std::vector<TechSeries> drops;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> r, s;
        for (int k = 0; k < 50 + i; ++k) {
            r.push_back(rng.exponential(1e9));
            s.push_back(rng.normal(5, 8));
        }
        drops.push_back(series(r, s));
    }
    const auto a = aggregate(drops, 0.0);
    std::reverse(drops.begin(), drops.end());
    std::swap(drops[3], drops[17]);
    const auto b = aggregate(drops, 0.0);
    CHECK(a.mean_rate_bps == b.mean_rate_bps);
    CHECK(a.rho_var == b.rho_var);
    CHECK(a.outage_prob == b.outage_prob);
    CHECK(a.ci_rate == b.ci_rate);
    CHECK(a.ci_outage == b.ci_outage);
    CHECK(a.rho_var_per_drop == b.rho_var_per_drop);
}

TEST_CASE("Bernoulli outage is recovered")
{
    RngStream rng(6);
    std::vector<TechSeries> drops;
    for (int i = 0; i < 10000; ++i) {
        const double snr = rng.bernoulli(0.1) ? -10.0 : 10.0;
        drops.push_back(series({1.0}, {snr}));
    }
    const auto s = aggregate(drops, 0.0);
    CHECK(std::abs(s.outage_prob - 0.1) < 0.006);
    CHECK(s.ci_outage == doctest::Approx(1.96 * std::sqrt(0.09 / 10000)).epsilon(0.05));
}

TEST_CASE("ci95_halfwidth")
{
    CHECK(std::isnan(ci95_halfwidth(std::vector<double>{1.0})));
    CHECK(ci95_halfwidth(std::vector<double>{2, 2, 2}) == 0.0);
    // Sample std of {1, 3} is sqrt(2).
    CHECK(ci95_halfwidth(std::vector<double>{1, 3}) == doctest::Approx(1.96 * std::sqrt(2.0) / std::sqrt(2.0)));
}
