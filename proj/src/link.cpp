#include "v2n/link.hpp"

#include <cmath>

namespace v2n {

RadioParams default_mmwave_radio() { return {DbmPower{30.0}, 1e9, 28e9, Decibel{5.0}, Decibel{0.0}}; }

RadioParams default_lte_radio() { return {DbmPower{46.0}, 20e6, 2e9, Decibel{5.0}, Decibel{0.0}}; }

DbmPower received_power(DbmPower tx, Decibel gain_tx, Decibel gain_rx, Decibel path_loss, LinearRatio fading)
{
    const double fade_db = fading.value > 0.0 ? 10.0 * std::log10(fading.value) : kNegInf;
    return {tx.value + gain_tx.value + gain_rx.value - path_loss.value + fade_db};
}

DbmPower noise_power(double bandwidth_hz, Decibel noise_figure_db)
{
    return {-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db.value};
}

Decibel snr(DbmPower rx, DbmPower noise) { return {rx.value - noise.value}; }

Decibel sinr(DbmPower rx, DbmPower noise, std::span<const DbmPower> interferers)
{
    double interference_mw = 0.0;
    for (const auto& p : interferers) {
        interference_mw += dbm_to_milliwatt(p);
    }
    if (interference_mw == 0.0) {
        return snr(rx, noise);
    }
    const double denom = dbm_to_milliwatt(noise) + interference_mw;
    return {10.0 * std::log10(dbm_to_milliwatt(rx) / denom)};
}

std::optional<std::size_t> associate(std::span<const LinkState> links)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (!best || links[i].path_loss_db < links[*best].path_loss_db) {
            best = i;
        }
    }
    return best;
}

std::optional<std::size_t> associate_by_power(std::span<const double> candidate_dbm)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < candidate_dbm.size(); ++i) {
        if (!best || candidate_dbm[i] > candidate_dbm[*best]) {
            best = i;
        }
    }
    return best;
}

double shannon_rate(double bandwidth_hz, Decibel snr_db)
{
    if (snr_db.value == kNegInf) {
        return 0.0;
    }
    return bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr_db.value / 10.0));
}

} // namespace v2n
