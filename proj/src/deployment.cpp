#include "v2n/deployment.hpp"

#include <cmath>
#include <ostream>

#include "v2n/errors.hpp"
#include "v2n/format.hpp"

namespace v2n {

std::string_view to_string(Tech tech) { return tech == Tech::Lte ? "LTE" : "mmWave"; }

std::vector<Position> sample_ppp(double density_per_km2, double area_side_m, RngStream& rng)
{
    const double area_km2 = (area_side_m / 1000.0) * (area_side_m / 1000.0);
    const auto count = rng.poisson(density_per_km2 * area_km2);
    std::vector<Position> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double x = rng.uniform(0.0, area_side_m);
        const double y = rng.uniform(0.0, area_side_m);
        points.push_back({x, y});
    }
    return points;
}

namespace {

void check(const DeploymentConfig& config)
{
    if (!(config.area_side_m > 0.0) || !std::isfinite(config.area_side_m)) {
        throw ConfigError("area_side_m: must be positive");
    }
    if (!(config.lambda_lte >= 0.0) || !std::isfinite(config.lambda_lte)) {
        throw ConfigError("lambda_lte: density must be >= 0");
    }
    if (!(config.lambda_mmw >= 0.0) || !std::isfinite(config.lambda_mmw)) {
        throw ConfigError("lambda_mmw: density must be >= 0");
    }
}

} // namespace

Deployment make_deployment(double area_side_m, const std::vector<Position>& lte, const std::vector<Position>& mmw)
{
    Deployment d;
    d.area_side_m = area_side_m;
    int id = 0;
    for (const auto& p : lte) {
        d.lte_rsus.push_back({id++, Tech::Lte, p});
    }
    for (const auto& p : mmw) {
        d.mmw_rsus.push_back({id++, Tech::MmWave, p});
    }
    return d;
}

Deployment build_deployment(const DeploymentConfig& config, const RngStream& lte_rng, const RngStream& mmw_rng)
{
    check(config);
    auto lte_stream = lte_rng;
    auto mmw_stream = mmw_rng;
    auto lte = sample_ppp(config.lambda_lte, config.area_side_m, lte_stream);
    for (std::uint64_t k = 0; config.lte_nonempty && config.lambda_lte > 0.0 && lte.empty(); ++k) {
        auto retry = lte_rng.derive("redraw", k);
        lte = sample_ppp(config.lambda_lte, config.area_side_m, retry);
    }
    const auto mmw = sample_ppp(config.lambda_mmw, config.area_side_m, mmw_stream);
    auto d = make_deployment(config.area_side_m, lte, mmw);
    d.lambda_lte = config.lambda_lte;
    d.lambda_mmw = config.lambda_mmw;
    return d;
}

Deployment build_deployment(const DeploymentConfig& config, const RngStream& rng)
{
    return build_deployment(config, rng.derive("layer", 0), rng.derive("layer", 1));
}

void write_deployment_csv(std::ostream& out, const Deployment& deployment)
{
    out << "tech,id,x_m,y_m\n";
    for (const auto* layer : {&deployment.lte_rsus, &deployment.mmw_rsus}) {
        for (const auto& rsu : *layer) {
            out << to_string(rsu.tech) << ',' << rsu.id << ',' << format_double(rsu.position.x) << ','
                << format_double(rsu.position.y) << '\n';
        }
    }
}

} // namespace v2n
