#pragma once

#include <iosfwd>
#include <string>

#include "supcast/censored.hpp"
#include "supcast/compositional.hpp"
#include "supcast/montecarlo.hpp"
#include "supcast/types.hpp"

namespace supcast {

/// Strict-schema JSON (unknown keys are errors). Field names mirror the
/// ScenarioConfig members exactly.
ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::string& path);

/// FNV-1a hex digest of the canonical config JSON.
std::string config_digest(const ScenarioConfig& config);

/// Columns: t,D,S,S_obs,B,binding.
void write_market_csv(std::ostream& out, const MarketPath& path);
MarketPath read_market_csv(std::istream& in);

/// Columns: t,model,point,predictive_sd,actual.
void write_forecast_csv(std::ostream& out, const std::vector<ForecastSeries>& forecasts,
                        const Series& actual);

/// Columns: t,d_aitchison,d_l1,binding.
void write_gap_csv(std::ostream& out, const GapSeries& gaps);

std::string report_to_json(const ExperimentReport& report);
/// Table-layout CSV: one row per model, RMSE and bias per window.
void write_report_table_csv(std::ostream& out, const ExperimentReport& report);
/// Plot data: one row per period per model with mean forecast / error.
void write_period_averages_csv(std::ostream& out, const PeriodAverages& averages);

std::string estimation_report_to_json(const EmResult& result, double censored_fraction,
                                      double tolerance);

} // namespace supcast
