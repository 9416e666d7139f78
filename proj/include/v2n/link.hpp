#pragma once

#include <optional>
#include <span>
#include <vector>

#include "v2n/channel.hpp"
#include "v2n/deployment.hpp"
#include "v2n/units.hpp"

namespace v2n {

struct RadioParams {
    DbmPower tx_power_dbm{30.0};
    double bandwidth_hz = 1e9;
    double carrier_hz = 28e9;
    Decibel noise_figure_db{5.0};
    Decibel outage_threshold_db{0.0}; // SNR threshold
};

RadioParams default_mmwave_radio();
RadioParams default_lte_radio();

/// One time-step sample of a link. serving_rsu < 0 means no serving RSU, in
/// which case snr_db is -inf and rate_bps is 0.
struct LinkSample {
    double t = 0.0;
    Tech tech = Tech::Lte;
    int serving_rsu = -1;
    Decibel snr_db{kNegInf};
    double rate_bps = 0.0;
    bool lost_alignment = false;
};

/// tx + gains - path loss + 10 log10(fading). Zero fading gives -inf dBm.
DbmPower received_power(DbmPower tx, Decibel gain_tx, Decibel gain_rx, Decibel path_loss, LinearRatio fading);

/// Thermal floor -174 dBm/Hz + 10 log10(W) + NF.
DbmPower noise_power(double bandwidth_hz, Decibel noise_figure_db);

Decibel snr(DbmPower rx, DbmPower noise);

/// rx / (noise + sum of interferers), all summed in milliwatts.
Decibel sinr(DbmPower rx, DbmPower noise, std::span<const DbmPower> interferers);

/// Index (into `links`) of the link with the largest fading-averaged received
/// power, i.e. the smallest path loss including shadowing; all candidates
/// are assumed to get the same aligned antenna gain. Ties go to the lower
/// index. Empty input gives nullopt.
std::optional<std::size_t> associate(std::span<const LinkState> links);

/// Same selection over arbitrary candidate powers (dBm).
std::optional<std::size_t> associate_by_power(std::span<const double> candidate_dbm);

/// W log2(1 + 10^(snr/10)).
double shannon_rate(double bandwidth_hz, Decibel snr_db);

} // namespace v2n
