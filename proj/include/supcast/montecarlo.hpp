#pragma once

#include "supcast/forecasters.hpp"
#include "supcast/metrics.hpp"
#include "supcast/types.hpp"

namespace supcast {

enum class ModelKind { naive, demand_only, coupled_true, coupled_observed };

std::string model_label(ModelKind kind);

/// per_replication_mean: average the per-replication metric values (default).
/// pooled_errors: pool every forecast error across replications first.
enum class Aggregation { per_replication_mean, pooled_errors };

struct CellStats {
    double rmse = 0.0, rmse_se = 0.0;
    double mean_bias = 0.0, bias_se = 0.0;
    double mae = 0.0, mae_se = 0.0;
    double crps = 0.0, crps_se = 0.0;
};

/// Per-period averages across replications, for plot-data export.
struct PeriodAverages {
    std::vector<int> t;
    std::vector<std::string> model_labels;
    std::vector<Series> mean_point; // [model][period]
    std::vector<Series> mean_error;
    Series mean_actual;
};

struct ExperimentReport {
    std::vector<std::string> model_labels;
    std::vector<Window> windows;
    std::vector<std::string> window_labels;
    std::vector<std::vector<CellStats>> cells; // [model][window]
    int replications = 0;
    std::uint64_t master_seed = 0;
    std::string config_digest;
    PeriodAverages period_averages; // filled when requested
};

struct ExperimentOptions {
    Aggregation aggregation = Aggregation::per_replication_mean;
    bool parallel = true;            // serial reference path when false
    bool collect_period_averages = false;
    ForecastOptions forecast;
};

/// Table-style Monte Carlo harness. Replication r draws its generator from
/// (master_seed, r); aggregation is order-free, so the OpenMP and serial
/// paths produce identical reports.
ExperimentReport run_experiment(const ScenarioConfig& config,
                                const std::vector<ModelKind>& models,
                                const std::vector<Window>& windows,
                                int reps, std::uint64_t master_seed,
                                const ExperimentOptions& options = {});

/// Default Table-layout windows for a given config: pre-shock
/// [train_end-19, train_end], post-shock [train_end+1, horizon].
std::vector<Window> default_windows(const ScenarioConfig& config);

/// One report per noise level; the coupled forecaster reads S_obs at that
/// level, the demand-only results are identical across levels.
std::vector<ExperimentReport> sensitivity_sweep(const ScenarioConfig& config,
                                                const std::vector<NoiseSpec>& levels,
                                                int reps, std::uint64_t master_seed,
                                                const ExperimentOptions& options = {});

struct NestedComparison {
    std::vector<double> dm_stats;  // one per replication with a defined test
    std::vector<double> p_values;
    int indistinguishable = 0;     // replications with identical losses
    int replications = 0;
    double rejection_fraction = 0.0; // share of all replications with p < 0.05
};

/// Per-replication Diebold-Mariano on squared-error losses over `window`.
NestedComparison nested_comparison(const ScenarioConfig& config,
                                   ModelKind base, ModelKind augmented,
                                   int reps, std::uint64_t master_seed, Window window,
                                   const ExperimentOptions& options = {});

} // namespace supcast
