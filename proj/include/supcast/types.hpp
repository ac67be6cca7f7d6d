#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace supcast {

using Series = std::vector<double>;

/// AR(1) parameters: y_t = mean + persistence * (y_{t-1} - mean) + N(0, sd^2).
struct Ar1Params {
    double mean = 0.0;
    double persistence = 0.0;
    double sd = 0.0;
};

/// Supply equation: S_t = intercept + slope * D_{t-1} + N(0, sd^2).
struct SupplyParams {
    double intercept = 0.0;
    double slope = 0.0;
    double sd = 0.0;
};

enum class ShockTarget { demand_mean, supply_intercept, coupling_slope };
enum class ShockKind { demand, supply, intervention };

/// Permanent step change to one DGP parameter from `time` onward.
struct ShockSpec {
    int time = 0; // 1-based period index
    ShockTarget target = ShockTarget::supply_intercept;
    double new_value = 0.0;
    ShockKind kind = ShockKind::supply;
};

enum class NoiseKind { none, additive, multiplicative };

/// Supply measurement-error channel applied when observing S.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double sd = 0.0;
};

/// Full parameterization of one coupled-market world.
struct ScenarioConfig {
    int horizon = 200;
    int train_end = 150;
    Ar1Params demand{50.0, 0.7, 5.0};
    SupplyParams supply{40.0, 0.3, 3.0};
    std::vector<ShockSpec> shocks;
    double matching_m = 1.0;
    NoiseSpec supply_noise;
    int burn_in = 100;
    std::uint64_t seed = 0;
};

/// One simulated realization. All series have length horizon; index i is
/// period i+1.
struct MarketPath {
    Series d;      // latent demand
    Series s;      // effective supply
    Series s_obs;  // noisy supply proxy
    Series b;      // realized bookings
    std::vector<bool> binding; // true where S_t < D_t
};

/// Rolling point forecasts with Gaussian predictive spread over an
/// inclusive 1-based period window [start, end].
struct ForecastSeries {
    int start = 0;
    int end = 0;
    Series point;
    Series predictive_sd;
    std::string model_label;

    int length() const { return end - start + 1; }
    bool covers(int t) const { return t >= start && t <= end; }
    double point_at(int t) const { return point[static_cast<std::size_t>(t - start)]; }
    double sd_at(int t) const { return predictive_sd[static_cast<std::size_t>(t - start)]; }
};

std::string to_string(ShockTarget t);
std::string to_string(ShockKind k);
std::string to_string(NoiseKind k);

/// Checks every type invariant; returns one diagnostic per violation
/// (empty list means the config is valid). Never throws on finite input.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

/// Canonical configuration: T=200, train_end=150, demand AR(1)(50, 0.7, 5),
/// supply (40, 0.3, 3), intercept drop to 25 at t=151.
ScenarioConfig default_scenario();

/// B_t = m * min(D_t, S_t) elementwise.
Series apply_ceiling(const Series& demand, const Series& supply, double m);

/// m_t = B_t / min(D_t, S_t). Throws if any min(D_t, S_t) <= 0, reporting
/// the offending index.
Series matching_efficiency(const Series& bookings, const Series& demand, const Series& supply);

} // namespace supcast
