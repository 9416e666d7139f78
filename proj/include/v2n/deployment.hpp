#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "v2n/geometry.hpp"
#include "v2n/rng.hpp"

namespace v2n {

enum class Tech { Lte, MmWave };

std::string_view to_string(Tech tech);

struct Rsu {
    int id = 0;
    Tech tech = Tech::Lte;
    Position position;
};

struct DeploymentConfig {
    double area_side_m = 1000.0;
    double lambda_lte = 4.0;  // RSU/km^2
    double lambda_mmw = 30.0; // RSU/km^2
    // Redraw an empty LTE layer, so the macro layer always offers a server.
    bool lte_nonempty = true;
};

/// RSU layout of one Monte Carlo drop. LTE RSUs are numbered first, then
/// mmWave RSUs, so ids are unique across both layers.
struct Deployment {
    double area_side_m = 1000.0;
    double lambda_lte = 0.0;
    double lambda_mmw = 0.0;
    std::vector<Rsu> lte_rsus;
    std::vector<Rsu> mmw_rsus;

    const std::vector<Rsu>& layer(Tech tech) const { return tech == Tech::Lte ? lte_rsus : mmw_rsus; }
};

/// Homogeneous PPP over [0, side]^2: Poisson(density * area_km2) points,
/// each uniform over the square.
std::vector<Position> sample_ppp(double density_per_km2, double area_side_m, RngStream& rng);

/// Samples both layers. The LTE layer is drawn from rng/("layer", 0) and the
/// mmWave layer from rng/("layer", 1), so the layers are independent and a
/// change of one density leaves the other layer untouched. With
/// lte_nonempty set and a positive LTE density, an empty LTE draw is
/// replaced by a fresh draw from the next ("redraw", k) substream.
/// Throws ConfigError on a negative density or a non-positive area.
Deployment build_deployment(const DeploymentConfig& config, const RngStream& rng);

/// Same as build_deployment, but takes the LTE positions from a separate
/// stream (used to hold the LTE layout fixed across drops).
Deployment build_deployment(const DeploymentConfig& config, const RngStream& lte_rng, const RngStream& mmw_rng);

/// Builds a deployment from explicit positions; ids follow the same rule.
Deployment make_deployment(double area_side_m, const std::vector<Position>& lte, const std::vector<Position>& mmw);

/// CSV with header `tech,id,x_m,y_m`.
void write_deployment_csv(std::ostream& out, const Deployment& deployment);

} // namespace v2n
