#pragma once

#include <limits>
#include <span>
#include <vector>

#include "v2n/deployment.hpp"

namespace v2n {

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

struct RateSeries {
    double dt = 0.1;
    std::vector<double> values; // bit/s
    Tech tech = Tech::Lte;
};

/// Rate and SNR series of one technology in one drop.
struct TechSeries {
    Tech tech = Tech::Lte;
    double dt = 0.1;
    std::vector<double> rate_bps;
    std::vector<double> snr_db; // -inf when no RSU serves the vehicle
    friend bool operator==(const TechSeries&, const TechSeries&) = default;
};

struct MetricsSummary {
    Tech tech = Tech::Lte;
    double mean_rate_bps = 0.0;
    /// Coefficient of variation of all rate samples pooled across drops.
    /// NaN when the pooled mean rate is zero.
    double rho_var = kNotApplicable;
    /// Fraction of all time samples (pooled across drops) below threshold.
    double outage_prob = 0.0;
    int n_drops = 0;
    // 95% normal-approximation half-widths from the spread of per-drop
    // values; NaN for a single drop.
    double ci_rate = kNotApplicable;
    double ci_rho = kNotApplicable;
    double ci_outage = kNotApplicable;
    // Per-drop diagnostics: mean of per-drop indices (drops with zero mean
    // rate are skipped) and the mean of per-drop outage fractions.
    double rho_var_per_drop = kNotApplicable;
    double outage_per_drop = 0.0;
};

/// Population std / mean. Throws MetricError for an empty series or a zero
/// mean.
double stability_index(std::span<const double> rates);
double stability_index(const RateSeries& series);

/// Fraction of samples strictly below the threshold. Throws MetricError for
/// an empty series.
double outage_probability(std::span<const double> snr_db, double threshold_db);

/// Aggregates per-drop series of one technology. The result does not depend
/// on the order of `drops`. Throws MetricError when `drops` is empty.
MetricsSummary aggregate(std::span<const TechSeries> drops, double outage_threshold_db);

/// 1.96 * sample standard deviation / sqrt(n); NaN for fewer than 2 values.
double ci95_halfwidth(std::span<const double> values);

} // namespace v2n
