#pragma once

#include <optional>

#include "supcast/rng.hpp"
#include "supcast/types.hpp"

namespace supcast {

/// AR(1) latent demand with demand_mean shocks. Draws the initial state
/// from the stationary distribution, discards burn_in periods, and returns
/// a series of length horizon. If lag_out is non-null it receives the last
/// pre-sample value (the lagged regressor for period 1).
Series simulate_demand(const Ar1Params& params, const std::vector<ShockSpec>& shocks,
                       int horizon, int burn_in, Rng& rng, double* lag_out = nullptr);

/// Endogenous supply on lagged demand, with supply_intercept and
/// coupling_slope shocks switching parameters permanently from their time
/// index onward. initial_lag is D_0; absent -> error.
Series simulate_supply(const SupplyParams& params, const Series& demand,
                       std::optional<double> initial_lag,
                       const std::vector<ShockSpec>& shocks, Rng& rng);

/// Measurement channel: none -> identity; additive -> S + N(0, sd^2);
/// multiplicative -> S * exp(N(0, sd^2)). Clamped below at 0.
Series observe_supply(const Series& supply, const NoiseSpec& noise, Rng& rng);

/// Composes demand -> supply -> ceiling -> observation; binding flags set.
/// Deterministic given config.seed (independent substreams per channel).
MarketPath simulate_market(const ScenarioConfig& config);

} // namespace supcast
