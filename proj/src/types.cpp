#include "supcast/types.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace supcast {

std::string to_string(ShockTarget t) {
    switch (t) {
        case ShockTarget::demand_mean: return "demand_mean";
        case ShockTarget::supply_intercept: return "supply_intercept";
        case ShockTarget::coupling_slope: return "coupling_slope";
    }
    return "?";
}

std::string to_string(ShockKind k) {
    switch (k) {
        case ShockKind::demand: return "demand";
        case ShockKind::supply: return "supply";
        case ShockKind::intervention: return "intervention";
    }
    return "?";
}

std::string to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::none: return "none";
        case NoiseKind::additive: return "additive";
        case NoiseKind::multiplicative: return "multiplicative";
    }
    return "?";
}

namespace {

ShockKind expected_kind(ShockTarget target) {
    switch (target) {
        case ShockTarget::demand_mean: return ShockKind::demand;
        case ShockTarget::supply_intercept: return ShockKind::supply;
        case ShockTarget::coupling_slope: return ShockKind::intervention;
    }
    return ShockKind::supply;
}

} // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& config) {
    std::vector<std::string> errors;
    auto add = [&errors](const std::string& field, const std::string& message) {
        errors.push_back(field + ": " + message);
    };

    if (config.horizon < 1) add("horizon", "must be a positive period count");
    if (config.train_end < 1) add("train_end", "must be positive");
    if (config.train_end >= config.horizon) add("train_end", "must be < horizon");
    if (!(std::abs(config.demand.persistence) < 1.0))
        add("demand.persistence", "persistence not stationary (|phi| must be < 1)");
    if (!(config.demand.sd >= 0.0)) add("demand.sd", "must be >= 0");
    if (!std::isfinite(config.demand.mean)) add("demand.mean", "must be finite");
    if (!(config.supply.sd >= 0.0)) add("supply.sd", "must be >= 0");
    if (!std::isfinite(config.supply.intercept)) add("supply.intercept", "must be finite");
    if (!std::isfinite(config.supply.slope)) add("supply.slope", "must be finite");
    if (!(config.matching_m > 0.0 && config.matching_m <= 1.0))
        add("matching_m", "matching efficiency out of range (0, 1]");
    if (config.burn_in < 0) add("burn_in", "must be >= 0");
    if (!(config.supply_noise.sd >= 0.0)) add("supply_noise.sd", "must be >= 0");

    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < config.shocks.size(); ++i) {
        const ShockSpec& shock = config.shocks[i];
        const std::string field = "shocks[" + std::to_string(i) + "]";
        if (shock.time < 1 || shock.time > config.horizon)
            add(field + ".time", "must lie in [1, horizon]");
        if (!std::isfinite(shock.new_value)) add(field + ".new_value", "must be finite");
        if (shock.kind != expected_kind(shock.target))
            add(field + ".kind", "inconsistent with target " + to_string(shock.target) +
                                     " (expected " + to_string(expected_kind(shock.target)) + ")");
        auto key = std::make_pair(shock.time, static_cast<int>(shock.target));
        if (!seen.insert(key).second)
            add(field, "duplicate shock for (time, target) pair");
    }
    return errors;
}

ScenarioConfig default_scenario() {
    ScenarioConfig config;
    config.shocks.push_back({151, ShockTarget::supply_intercept, 25.0, ShockKind::supply});
    config.seed = 20260823;
    return config;
}

Series apply_ceiling(const Series& demand, const Series& supply, double m) {
    if (demand.size() != supply.size())
        throw std::invalid_argument("apply_ceiling: length mismatch");
    if (!(m > 0.0 && m <= 1.0))
        throw std::invalid_argument("apply_ceiling: m outside (0, 1]");
    Series bookings(demand.size());
    for (std::size_t i = 0; i < demand.size(); ++i) {
        if (!std::isfinite(demand[i]) || !std::isfinite(supply[i]))
            throw std::invalid_argument("apply_ceiling: non-finite input at index " +
                                        std::to_string(i));
        bookings[i] = m * std::min(demand[i], supply[i]);
    }
    return bookings;
}

Series matching_efficiency(const Series& bookings, const Series& demand, const Series& supply) {
    if (bookings.size() != demand.size() || demand.size() != supply.size())
        throw std::invalid_argument("matching_efficiency: length mismatch");
    Series m(bookings.size());
    for (std::size_t i = 0; i < bookings.size(); ++i) {
        const double floor = std::min(demand[i], supply[i]);
        if (!(floor > 0.0)) {
            std::ostringstream msg;
            msg << "matching_efficiency: min(D, S) <= 0 at t=" << i;
            throw std::domain_error(msg.str());
        }
        m[i] = bookings[i] / floor;
    }
    return m;
}

} // namespace supcast
