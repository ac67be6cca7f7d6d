#pragma once

#include <utility>

#include "supcast/types.hpp"

namespace supcast {

/// OLS fit of S_t on (1, proxy_lag_t).
struct SupplyRegressionParams {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_sd = 0.0;
};

/// OLS of y_t on (1, y_{t-1}); mean = c / (1 - phi), sd = residual standard
/// deviation with denominator n-2. A non-stationary estimate (|phi| >= 1)
/// is returned as-is; callers can inspect persistence.
Ar1Params fit_ar1(const Series& y);

/// (point, sd) one step ahead: point = mean + persistence*(y_prev - mean).
std::pair<double, double> forecast_ar1_step(const Ar1Params& params, double y_prev);

SupplyRegressionParams fit_supply_regression(const Series& supply, const Series& proxy_lag);

enum class SupplyChannel { true_s, observed_s };

/// Post-training conditioning for the demand-only model: `recursive` feeds
/// the model its own previous forecast after train_end (train/test
/// discipline); `observed` feeds the realized B_{t-1} everywhere.
enum class DemandFeedback { recursive, observed };

struct ForecastOptions {
    DemandFeedback feedback = DemandFeedback::recursive;
    bool refit_supply = true; // expanding post-training re-fit; false = frozen ablation
    int refit_min_obs = 5;    // post-training observations required before re-fitting
};

/// AR(1) fit once on B over [1, train_end], frozen; rolling one-step
/// forecasts over [train_end - 19, horizon].
ForecastSeries demand_only_forecast(const MarketPath& path, const ScenarioConfig& config,
                                    const ForecastOptions& options = {});

/// min(D_hat, S_hat): demand branch identical to demand_only_forecast
/// (same frozen AR(1), same feedback rule); supply nowcast from an OLS of
/// the chosen channel on B_{t-1}, re-fit each post-training step on the
/// expanding window of post-training supply. Predictive sd comes from the
/// binding branch (demand branch on ties).
ForecastSeries coupled_forecast(const MarketPath& path, const ScenarioConfig& config,
                                SupplyChannel channel, const ForecastOptions& options = {});

/// forecast_t = B_{t-1}; sd = sd of training first differences.
ForecastSeries naive_forecast(const MarketPath& path, const ScenarioConfig& config);

} // namespace supcast
