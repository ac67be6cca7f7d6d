#include "supcast/forecasters.hpp"

#include <cmath>
#include <stdexcept>

namespace supcast {

namespace {

struct OlsFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_sd = 0.0;
};

// OLS of y on (1, x) with residual sd on denominator n-2.
OlsFit ols(const Series& y, const Series& x) {
    if (y.size() != x.size()) throw std::invalid_argument("ols: length mismatch");
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("ols: need at least 3 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 1e-12 * static_cast<double>(n)))
        throw std::invalid_argument("ols: degenerate regressor (zero variance)");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        rss += r * r;
    }
    fit.residual_sd = std::sqrt(rss / static_cast<double>(n - 2));
    return fit;
}

int forecast_start(const ScenarioConfig& config) {
    // Covers both evaluation windows: [train_end - 19, horizon].
    return std::max(2, config.train_end - 19);
}

void check_train_length(const ScenarioConfig& config) {
    if (config.train_end < 10)
        throw std::invalid_argument("forecast: train_end must be >= 10");
}

} // namespace

Ar1Params fit_ar1(const Series& y) {
    if (y.size() < 10) throw std::invalid_argument("fit_ar1: need at least 10 observations");
    Series lagged(y.begin(), y.end() - 1);
    Series current(y.begin() + 1, y.end());
    OlsFit fit;
    try {
        fit = ols(current, lagged);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("fit_ar1: degenerate fit (constant series)");
    }
    Ar1Params params;
    params.persistence = fit.slope;
    params.mean = fit.intercept / (1.0 - fit.slope);
    params.sd = fit.residual_sd;
    return params;
}

std::pair<double, double> forecast_ar1_step(const Ar1Params& params, double y_prev) {
    return {params.mean + params.persistence * (y_prev - params.mean), params.sd};
}

SupplyRegressionParams fit_supply_regression(const Series& supply, const Series& proxy_lag) {
    if (supply.size() != proxy_lag.size())
        throw std::invalid_argument("fit_supply_regression: length mismatch");
    if (supply.size() < 10)
        throw std::invalid_argument("fit_supply_regression: need at least 10 observations");
    const OlsFit fit = ols(supply, proxy_lag);
    return {fit.intercept, fit.slope, fit.residual_sd};
}

ForecastSeries demand_only_forecast(const MarketPath& path, const ScenarioConfig& config,
                                    const ForecastOptions& options) {
    check_train_length(config);
    const Series train(path.b.begin(), path.b.begin() + config.train_end);
    const Ar1Params params = fit_ar1(train);

    ForecastSeries fs;
    fs.start = forecast_start(config);
    fs.end = config.horizon;
    fs.model_label = "demand_only";
    fs.point.reserve(static_cast<std::size_t>(fs.length()));
    fs.predictive_sd.assign(static_cast<std::size_t>(fs.length()), params.sd);
    double last_point = 0.0;
    for (int t = fs.start; t <= fs.end; ++t) {
        const bool recurse = options.feedback == DemandFeedback::recursive &&
                             t > config.train_end + 1;
        const double lag = recurse ? last_point : path.b[static_cast<std::size_t>(t - 2)];
        last_point = forecast_ar1_step(params, lag).first;
        fs.point.push_back(last_point);
    }
    return fs;
}

ForecastSeries coupled_forecast(const MarketPath& path, const ScenarioConfig& config,
                                SupplyChannel channel, const ForecastOptions& options) {
    check_train_length(config);
    const Series& supply = channel == SupplyChannel::true_s ? path.s : path.s_obs;
    const Series train(path.b.begin(), path.b.begin() + config.train_end);
    const Ar1Params demand_params = fit_ar1(train);

    // Training regression: S_t on B_{t-1} over periods [2, train_end].
    const Series train_supply(supply.begin() + 1, supply.begin() + config.train_end);
    const Series train_lag(path.b.begin(), path.b.begin() + config.train_end - 1);
    const SupplyRegressionParams trained = fit_supply_regression(train_supply, train_lag);

    ForecastSeries fs;
    fs.start = forecast_start(config);
    fs.end = config.horizon;
    fs.model_label = channel == SupplyChannel::true_s ? "coupled_true_s" : "coupled_observed_s";

    SupplyRegressionParams current = trained;
    double last_demand_hat = 0.0;
    for (int t = fs.start; t <= fs.end; ++t) {
        if (options.refit_supply && t > config.train_end) {
            // Expanding window over the post-training observations
            // [train_end + 1, t - 1]; the training fit carries the first
            // few steps until enough points accumulate.
            const int available = t - 1 - config.train_end;
            if (available >= options.refit_min_obs) {
                const Series window_supply(supply.begin() + config.train_end,
                                           supply.begin() + (t - 1));
                const Series window_lag(path.b.begin() + config.train_end - 1,
                                        path.b.begin() + (t - 2));
                try {
                    const OlsFit refit = ols(window_supply, window_lag);
                    current = {refit.intercept, refit.slope, refit.residual_sd};
                } catch (const std::invalid_argument&) {
                    // keep previous parameters when the window is degenerate
                }
            }
        }
        // The demand branch follows the same feedback rule as the standalone
        // demand-only model (recursing on its own branch), so a never-binding
        // supply path reduces this model to the demand-only forecaster.
        const double lag = path.b[static_cast<std::size_t>(t - 2)];
        const bool recurse = options.feedback == DemandFeedback::recursive &&
                             t > config.train_end + 1;
        const auto [demand_hat, demand_sd] =
            forecast_ar1_step(demand_params, recurse ? last_demand_hat : lag);
        last_demand_hat = demand_hat;
        const double supply_hat = current.intercept + current.slope * lag;
        if (demand_hat <= supply_hat) {
            fs.point.push_back(demand_hat);
            fs.predictive_sd.push_back(demand_sd);
        } else {
            fs.point.push_back(supply_hat);
            fs.predictive_sd.push_back(current.residual_sd);
        }
    }
    return fs;
}

ForecastSeries naive_forecast(const MarketPath& path, const ScenarioConfig& config) {
    check_train_length(config);
    double sum = 0.0, sum_sq = 0.0;
    const int nd = config.train_end - 1;
    for (int i = 1; i < config.train_end; ++i) {
        const double diff = path.b[static_cast<std::size_t>(i)] -
                            path.b[static_cast<std::size_t>(i - 1)];
        sum += diff;
        sum_sq += diff * diff;
    }
    const double mean = sum / nd;
    const double var = nd > 1 ? (sum_sq - nd * mean * mean) / (nd - 1) : 0.0;
    const double diff_sd = std::sqrt(std::max(0.0, var));

    ForecastSeries fs;
    fs.start = forecast_start(config);
    fs.end = config.horizon;
    fs.model_label = "naive";
    for (int t = fs.start; t <= fs.end; ++t) {
        fs.point.push_back(path.b[static_cast<std::size_t>(t - 2)]);
        fs.predictive_sd.push_back(diff_sd);
    }
    return fs;
}

} // namespace supcast
