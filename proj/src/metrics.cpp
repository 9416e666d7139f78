#include "v2n/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "v2n/errors.hpp"

namespace v2n {

namespace {

struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations

    friend bool operator<(const Moments& a, const Moments& b)
    {
        return std::tie(a.n, a.mean, a.m2) < std::tie(b.n, b.mean, b.m2);
    }
};

Moments moments(std::span<const double> xs)
{
    Moments m;
    m.n = static_cast<double>(xs.size());
    if (xs.empty()) {
        return m;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    m.mean = sum / m.n;
    for (double x : xs) {
        m.m2 += (x - m.mean) * (x - m.mean);
    }
    return m;
}

Moments combine(const Moments& a, const Moments& b)
{
    if (a.n == 0.0) {
        return b;
    }
    if (b.n == 0.0) {
        return a;
    }
    Moments m;
    m.n = a.n + b.n;
    const double delta = b.mean - a.mean;
    m.mean = a.mean + delta * b.n / m.n;
    m.m2 = a.m2 + b.m2 + delta * delta * a.n * b.n / m.n;
    return m;
}

double mean_of(std::vector<double> values)
{
    // Sorted summation keeps the result independent of input order.
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s / static_cast<double>(values.size());
}

} // namespace

double stability_index(std::span<const double> rates)
{
    if (rates.empty()) {
        throw MetricError("undefined stability (empty series)");
    }
    const auto m = moments(rates);
    if (m.mean == 0.0) {
        throw MetricError("undefined stability (zero mean)");
    }
    return std::sqrt(m.m2 / m.n) / m.mean;
}

double stability_index(const RateSeries& series) { return stability_index(series.values); }

double outage_probability(std::span<const double> snr_db, double threshold_db)
{
    if (snr_db.empty()) {
        throw MetricError("outage probability of an empty series");
    }
    const auto below = std::count_if(snr_db.begin(), snr_db.end(), [&](double s) { return s < threshold_db; });
    return static_cast<double>(below) / static_cast<double>(snr_db.size());
}

double ci95_halfwidth(std::span<const double> values)
{
    if (values.size() < 2) {
        return kNotApplicable;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto m = moments(sorted);
    const double sd = std::sqrt(m.m2 / (m.n - 1.0));
    return 1.96 * sd / std::sqrt(m.n);
}

MetricsSummary aggregate(std::span<const TechSeries> drops, double outage_threshold_db)
{
    if (drops.empty()) {
        throw MetricError("cannot aggregate zero drops");
    }
    MetricsSummary s;
    s.tech = drops.front().tech;
    s.n_drops = static_cast<int>(drops.size());

    std::vector<Moments> per_drop;
    std::vector<double> drop_means;
    std::vector<double> drop_rhos;
    std::vector<double> drop_outages;
    std::vector<std::pair<double, double>> outage_counts; // (below, total)
    per_drop.reserve(drops.size());
    for (const auto& d : drops) {
        const auto m = moments(d.rate_bps);
        per_drop.push_back(m);
        drop_means.push_back(m.mean);
        if (m.n > 0 && m.mean > 0.0) {
            drop_rhos.push_back(std::sqrt(m.m2 / m.n) / m.mean);
        }
        if (!d.snr_db.empty()) {
            const double p = outage_probability(d.snr_db, outage_threshold_db);
            drop_outages.push_back(p);
            outage_counts.emplace_back(p * static_cast<double>(d.snr_db.size()),
                                       static_cast<double>(d.snr_db.size()));
        }
    }

    std::sort(per_drop.begin(), per_drop.end());
    Moments pooled;
    for (const auto& m : per_drop) {
        pooled = combine(pooled, m);
    }
    s.mean_rate_bps = pooled.mean;
    if (pooled.n > 0 && pooled.mean > 0.0) {
        s.rho_var = std::sqrt(pooled.m2 / pooled.n) / pooled.mean;
    }
    s.ci_rate = ci95_halfwidth(drop_means);
    s.ci_rho = ci95_halfwidth(drop_rhos);
    if (!drop_rhos.empty()) {
        s.rho_var_per_drop = mean_of(drop_rhos);
    }

    if (!outage_counts.empty()) {
        std::sort(outage_counts.begin(), outage_counts.end());
        double below = 0.0;
        double total = 0.0;
        for (const auto& [b, t] : outage_counts) {
            below += std::round(b);
            total += t;
        }
        s.outage_prob = below / total;
        s.outage_per_drop = mean_of(drop_outages);
        s.ci_outage = ci95_halfwidth(drop_outages);
    }
    return s;
}

} // namespace v2n
