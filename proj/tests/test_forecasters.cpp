#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "supcast/dgp.hpp"
#include "supcast/forecasters.hpp"
#include "supcast/metrics.hpp"

using namespace supcast;

TEST_CASE("fit_ar1 recovers the generating parameters on a long series") {
    Rng rng(17);
    const Series y = simulate_demand({50.0, 0.7, 5.0}, {}, 100000, 100, rng);
    const Ar1Params fit = fit_ar1(y);
    CHECK(fit.persistence == doctest::Approx(0.70).epsilon(0.015)); // +/- 0.01
    CHECK(fit.mean == doctest::Approx(50.0).epsilon(0.004));        // +/- 0.2
    CHECK(fit.sd == doctest::Approx(5.0).epsilon(0.02));
}

TEST_CASE("fit_ar1 on white noise estimates near-zero persistence") {
    Rng rng(23);
    std::normal_distribution<double> normal(0.0, 1.0);
    Series y(50000);
    for (auto& v : y) v = normal(rng);
    const Ar1Params fit = fit_ar1(y);
    CHECK(std::abs(fit.persistence) < 0.02);
    CHECK(std::abs(fit.mean) < 0.05);
}

TEST_CASE("fit_ar1 rejects short and constant series") {
    CHECK_THROWS_AS(fit_ar1(Series(5, 1.0)), std::invalid_argument);
    CHECK_THROWS_WITH_AS(fit_ar1(Series(100, 3.0)), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("forecast_ar1_step closed forms") {
    const Ar1Params params{50.0, 0.7, 5.0};
    auto [at_mean, sd1] = forecast_ar1_step(params, 50.0);
    CHECK(at_mean == doctest::Approx(50.0));
    CHECK(sd1 == doctest::Approx(5.0));
    auto [above, sd2] = forecast_ar1_step(params, 60.0);
    CHECK(above == doctest::Approx(57.0)); // 50 + 0.7*10
    CHECK(sd2 == doctest::Approx(5.0));
}

TEST_CASE("supply regression recovers intercept and slope") {
    Rng demand_rng(31), supply_rng(32);
    const Series d = simulate_demand({50, 0.7, 5}, {}, 50000, 100, demand_rng);
    const Series s = simulate_supply({40, 0.3, 3}, d, 50.0, {}, supply_rng);
    Series lag(d.size());
    lag[0] = 50.0;
    for (std::size_t i = 1; i < d.size(); ++i) lag[i] = d[i - 1];
    const SupplyRegressionParams fit = fit_supply_regression(s, lag);
    CHECK(fit.intercept == doctest::Approx(40.0).epsilon(0.0075)); // +/- 0.3
    CHECK(fit.slope == doctest::Approx(0.30).epsilon(0.034));      // +/- 0.01
    CHECK(fit.residual_sd == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("demand-only forecast freezes parameters at train_end") {
    // With recursive feedback the post-training path obeys the frozen
    // recursion exactly: f_t = mu + phi*(f_{t-1} - mu).
    const ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    const ForecastSeries f = demand_only_forecast(path, config);
    REQUIRE(f.covers(config.train_end + 2));
    REQUIRE(f.covers(config.horizon));

    const Series train(path.b.begin(), path.b.begin() + config.train_end);
    const Ar1Params fit = fit_ar1(train);
    for (int t = config.train_end + 2; t <= config.horizon; ++t) {
        const double expected =
            fit.mean + fit.persistence * (f.point_at(t - 1) - fit.mean);
        CHECK(f.point_at(t) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(f.sd_at(t) == doctest::Approx(fit.sd));
    }
    // inside training the lag is the observed booking
    const int t0 = config.train_end - 5;
    const double expected =
        fit.mean + fit.persistence * (path.b[static_cast<std::size_t>(t0 - 2)] - fit.mean);
    CHECK(f.point_at(t0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("observed feedback uses realized bookings everywhere") {
    const ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    ForecastOptions options;
    options.feedback = DemandFeedback::observed;
    const ForecastSeries f = demand_only_forecast(path, config, options);
    const Series train(path.b.begin(), path.b.begin() + config.train_end);
    const Ar1Params fit = fit_ar1(train);
    for (int t = f.start; t <= f.end; ++t) {
        const double expected =
            fit.mean + fit.persistence * (path.b[static_cast<std::size_t>(t - 2)] - fit.mean);
        CHECK(f.point_at(t) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("coupled forecast is the min of its two branches") {
    const ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    ForecastOptions options;
    options.feedback = DemandFeedback::observed; // make the demand branch reproducible
    const ForecastSeries demand_branch = demand_only_forecast(path, config, options);
    const ForecastSeries coupled = coupled_forecast(path, config, SupplyChannel::true_s, options);
    for (int t = coupled.start; t <= coupled.end; ++t)
        CHECK(coupled.point_at(t) <= demand_branch.point_at(t) + 1e-9);
}

TEST_CASE("coupled forecast equals demand-only when supply is slack") {
    // Huge supply intercept: the ceiling never binds, so the min() operator
    // must reduce to the pure demand branch within numerical tolerance.
    ScenarioConfig config = default_scenario();
    config.shocks.clear();
    config.supply = {500.0, 0.0, 1.0};
    config.seed = 777;
    const MarketPath path = simulate_market(config);
    const ForecastSeries demand_branch = demand_only_forecast(path, config);
    const ForecastSeries coupled = coupled_forecast(path, config, SupplyChannel::true_s);
    REQUIRE(demand_branch.start == coupled.start);
    REQUIRE(demand_branch.end == coupled.end);
    for (int t = coupled.start; t <= coupled.end; ++t) {
        CHECK(coupled.point_at(t) == doctest::Approx(demand_branch.point_at(t)).epsilon(1e-6));
        CHECK(coupled.sd_at(t) == doctest::Approx(demand_branch.sd_at(t)).epsilon(1e-6));
    }
}

TEST_CASE("regime recovery: coupled absorbs the shock, demand-only does not") {
    const ScenarioConfig base = default_scenario();
    double demand_only_bias = 0.0, coupled_bias = 0.0;
    const int reps = 50;
    for (int rep = 0; rep < reps; ++rep) {
        ScenarioConfig config = base;
        config.seed = 40000 + static_cast<std::uint64_t>(rep);
        const MarketPath path = simulate_market(config);
        const ForecastSeries d_only = demand_only_forecast(path, config);
        const ForecastSeries coupled = coupled_forecast(path, config, SupplyChannel::true_s);
        const Window post{config.train_end + 1, config.horizon};
        demand_only_bias += point_metrics(d_only, path.b, post).mean_bias;
        coupled_bias += point_metrics(coupled, path.b, post).mean_bias;
    }
    demand_only_bias /= reps;
    coupled_bias /= reps;
    CHECK(demand_only_bias > 8.0);
    CHECK(std::abs(coupled_bias) <= 1.5);
}

TEST_CASE("frozen-supply ablation keeps the training regression") {
    ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    ForecastOptions frozen;
    frozen.refit_supply = false;
    const ForecastSeries f = coupled_forecast(path, config, SupplyChannel::true_s, frozen);
    // the pre-shock supply regime stays in force, so the post-shock ceiling
    // is badly over-estimated and the forecast over-predicts
    const Window post{config.train_end + 1, config.horizon};
    const double bias = point_metrics(f, path.b, post).mean_bias;
    ForecastOptions refit;
    const double refit_bias =
        point_metrics(coupled_forecast(path, config, SupplyChannel::true_s, refit),
                      path.b, post)
            .mean_bias;
    CHECK(bias > refit_bias + 2.0);
}

TEST_CASE("naive forecast is the lagged booking") {
    const ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    const ForecastSeries f = naive_forecast(path, config);
    for (int t = f.start; t <= f.end; ++t)
        CHECK(f.point_at(t) == doctest::Approx(path.b[static_cast<std::size_t>(t - 2)]));
    CHECK(f.sd_at(f.start) > 0.0);
}

TEST_CASE("forecasters are deterministic functions of the path") {
    const ScenarioConfig config = default_scenario();
    const MarketPath path = simulate_market(config);
    const ForecastSeries a = coupled_forecast(path, config, SupplyChannel::observed_s);
    const ForecastSeries b = coupled_forecast(path, config, SupplyChannel::observed_s);
    CHECK(a.point == b.point);
    CHECK(a.predictive_sd == b.predictive_sd);
}
