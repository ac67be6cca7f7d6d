#include "supcast/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supcast {

namespace {

// Channel tags for per-path substreams; keeps the measurement-noise draws
// out of the demand/supply streams so sensitivity sweeps share paths.
enum : std::uint64_t { kDemandChannel = 1, kSupplyChannel = 2, kNoiseChannel = 3 };

} // namespace

Series simulate_demand(const Ar1Params& params, const std::vector<ShockSpec>& shocks,
                       int horizon, int burn_in, Rng& rng, double* lag_out) {
    if (horizon < 1) throw std::invalid_argument("simulate_demand: horizon must be >= 1");
    if (!(std::abs(params.persistence) < 1.0))
        throw std::invalid_argument(
            "simulate_demand: non-stationary persistence rejected (divergent under burn-in)");
    if (params.sd < 0.0) throw std::invalid_argument("simulate_demand: sd must be >= 0");

    auto mean_at = [&](int t) { // 1-based period; t <= 0 during burn-in
        double mu = params.mean;
        for (const ShockSpec& shock : shocks)
            if (shock.target == ShockTarget::demand_mean && shock.time <= t) mu = shock.new_value;
        return mu;
    };

    std::normal_distribution<double> unit(0.0, 1.0);
    const double stationary_sd =
        params.sd / std::sqrt(1.0 - params.persistence * params.persistence);
    double state = params.mean + stationary_sd * unit(rng);
    for (int i = 0; i < burn_in; ++i)
        state = params.mean + params.persistence * (state - params.mean) + params.sd * unit(rng);

    if (lag_out) *lag_out = state;
    Series d(static_cast<std::size_t>(horizon));
    for (int t = 1; t <= horizon; ++t) {
        const double mu = mean_at(t);
        state = mu + params.persistence * (state - mu) + params.sd * unit(rng);
        d[static_cast<std::size_t>(t - 1)] = state;
    }
    return d;
}

Series simulate_supply(const SupplyParams& params, const Series& demand,
                       std::optional<double> initial_lag,
                       const std::vector<ShockSpec>& shocks, Rng& rng) {
    if (demand.empty()) throw std::invalid_argument("simulate_supply: empty demand series");
    if (!initial_lag)
        throw std::invalid_argument(
            "simulate_supply: missing lagged demand for t=1 (no burn-in value)");
    if (params.sd < 0.0) throw std::invalid_argument("simulate_supply: sd must be >= 0");

    std::normal_distribution<double> unit(0.0, 1.0);
    const int horizon = static_cast<int>(demand.size());
    Series s(demand.size());
    for (int t = 1; t <= horizon; ++t) {
        double intercept = params.intercept;
        double slope = params.slope;
        for (const ShockSpec& shock : shocks) {
            if (shock.time > t) continue;
            if (shock.target == ShockTarget::supply_intercept) intercept = shock.new_value;
            if (shock.target == ShockTarget::coupling_slope) slope = shock.new_value;
        }
        const double lag = (t == 1) ? *initial_lag : demand[static_cast<std::size_t>(t - 2)];
        s[static_cast<std::size_t>(t - 1)] = intercept + slope * lag + params.sd * unit(rng);
    }
    return s;
}

Series observe_supply(const Series& supply, const NoiseSpec& noise, Rng& rng) {
    if (noise.sd < 0.0) throw std::invalid_argument("observe_supply: sd must be >= 0");
    if (noise.kind == NoiseKind::none) return supply;
    std::normal_distribution<double> unit(0.0, 1.0);
    Series observed(supply.size());
    for (std::size_t i = 0; i < supply.size(); ++i) {
        const double eps = noise.sd * unit(rng);
        const double value = noise.kind == NoiseKind::additive ? supply[i] + eps
                                                               : supply[i] * std::exp(eps);
        observed[i] = std::max(0.0, value);
    }
    return observed;
}

MarketPath simulate_market(const ScenarioConfig& config) {
    auto errors = validate_scenario(config);
    if (!errors.empty()) {
        std::string message = "simulate_market: invalid config:";
        for (const auto& e : errors) message += "\n  " + e;
        throw std::invalid_argument(message);
    }

    Rng demand_rng(derive_seed(config.seed, kDemandChannel));
    Rng supply_rng(derive_seed(config.seed, kSupplyChannel));
    Rng noise_rng(derive_seed(config.seed, kNoiseChannel));

    MarketPath path;
    double initial_lag = 0.0;
    path.d = simulate_demand(config.demand, config.shocks, config.horizon, config.burn_in,
                             demand_rng, &initial_lag);
    path.s = simulate_supply(config.supply, path.d, initial_lag, config.shocks, supply_rng);
    path.b = apply_ceiling(path.d, path.s, config.matching_m);
    path.s_obs = observe_supply(path.s, config.supply_noise, noise_rng);
    path.binding.resize(path.d.size());
    for (std::size_t i = 0; i < path.d.size(); ++i) path.binding[i] = path.s[i] < path.d[i];
    return path;
}

} // namespace supcast
