#include "supcast/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "supcast/dgp.hpp"
#include "supcast/io.hpp"

namespace supcast {

std::string model_label(ModelKind kind) {
    switch (kind) {
        case ModelKind::naive: return "naive";
        case ModelKind::demand_only: return "demand_only";
        case ModelKind::coupled_true: return "coupled_true_s";
        case ModelKind::coupled_observed: return "coupled_observed_s";
    }
    return "?";
}

std::vector<Window> default_windows(const ScenarioConfig& config) {
    return {{config.train_end - 19, config.train_end}, {config.train_end + 1, config.horizon}};
}

namespace {

constexpr std::uint64_t kReplicationChannel = 7;

ForecastSeries run_model(ModelKind kind, const MarketPath& path, const ScenarioConfig& config,
                         const ForecastOptions& options) {
    switch (kind) {
        case ModelKind::naive: return naive_forecast(path, config);
        case ModelKind::demand_only: return demand_only_forecast(path, config, options);
        case ModelKind::coupled_true:
            return coupled_forecast(path, config, SupplyChannel::true_s, options);
        case ModelKind::coupled_observed:
            return coupled_forecast(path, config, SupplyChannel::observed_s, options);
    }
    throw std::logic_error("run_model: unknown model");
}

struct CellSums {
    double rmse = 0.0, bias = 0.0, mae = 0.0, crps = 0.0;
    double sq_err = 0.0, abs_err = 0.0, err = 0.0, crps_sum = 0.0; // pooled accumulators
};

struct RepResult {
    // [model][window]
    std::vector<std::vector<CellSums>> cells;
    // per-period forecast points and errors, when plot data is requested
    std::vector<Series> points;
    std::vector<Series> errors;
    Series actual;
    std::string failure; // non-empty on error
};

RepResult run_replication(const ScenarioConfig& base, const std::vector<ModelKind>& models,
                          const std::vector<Window>& windows, std::uint64_t master_seed,
                          int rep, const ExperimentOptions& options) {
    RepResult result;
    ScenarioConfig config = base;
    config.seed = derive_seed(master_seed ^ (kReplicationChannel << 56),
                              static_cast<std::uint64_t>(rep));
    const MarketPath path = simulate_market(config);

    result.cells.resize(models.size(), std::vector<CellSums>(windows.size()));
    for (std::size_t m = 0; m < models.size(); ++m) {
        const ForecastSeries forecast = run_model(models[m], path, config, options.forecast);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const Window window = windows[w];
            const PointMetrics pm = point_metrics(forecast, path.b, window);
            CellSums& cell = result.cells[m][w];
            cell.rmse = pm.rmse;
            cell.bias = pm.mean_bias;
            cell.mae = pm.mae;
            double crps_sum = 0.0;
            for (int t = window.first; t <= window.last; ++t) {
                const double err =
                    forecast.point_at(t) - path.b[static_cast<std::size_t>(t - 1)];
                cell.sq_err += err * err;
                cell.abs_err += std::abs(err);
                cell.err += err;
                crps_sum += crps_gaussian(forecast.point_at(t), forecast.sd_at(t),
                                          path.b[static_cast<std::size_t>(t - 1)]);
            }
            cell.crps_sum = crps_sum;
            cell.crps = crps_sum / window.length();
        }
        if (options.collect_period_averages) {
            Series points, errors;
            for (int t = forecast.start; t <= forecast.end; ++t) {
                points.push_back(forecast.point_at(t));
                errors.push_back(forecast.point_at(t) - path.b[static_cast<std::size_t>(t - 1)]);
            }
            result.points.push_back(std::move(points));
            result.errors.push_back(std::move(errors));
        }
    }
    if (options.collect_period_averages) {
        const int start = std::max(2, config.train_end - 19);
        result.actual.assign(path.b.begin() + start - 1, path.b.end());
    }
    return result;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (values.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

} // namespace

ExperimentReport run_experiment(const ScenarioConfig& config,
                                const std::vector<ModelKind>& models,
                                const std::vector<Window>& windows,
                                int reps, std::uint64_t master_seed,
                                const ExperimentOptions& options) {
    if (reps < 1) throw std::invalid_argument("run_experiment: reps must be >= 1");
    if (models.empty()) throw std::invalid_argument("run_experiment: models must be nonempty");
    if (windows.empty()) throw std::invalid_argument("run_experiment: windows must be nonempty");

    std::vector<RepResult> results(static_cast<std::size_t>(reps));
    if (options.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < reps; ++r) {
            try {
                results[static_cast<std::size_t>(r)] =
                    run_replication(config, models, windows, master_seed, r, options);
            } catch (const std::exception& e) {
                results[static_cast<std::size_t>(r)].failure = e.what();
            }
        }
    } else {
        for (int r = 0; r < reps; ++r) {
            try {
                results[static_cast<std::size_t>(r)] =
                    run_replication(config, models, windows, master_seed, r, options);
            } catch (const std::exception& e) {
                results[static_cast<std::size_t>(r)].failure = e.what();
            }
        }
    }
    for (int r = 0; r < reps; ++r)
        if (!results[static_cast<std::size_t>(r)].failure.empty())
            throw std::runtime_error("run_experiment: replication " + std::to_string(r) +
                                     " failed: " + results[static_cast<std::size_t>(r)].failure);

    ExperimentReport report;
    report.replications = reps;
    report.master_seed = master_seed;
    report.config_digest = config_digest(config);
    for (ModelKind kind : models) report.model_labels.push_back(model_label(kind));
    report.windows = windows;
    for (const Window& w : windows)
        report.window_labels.push_back("t" + std::to_string(w.first) + "_" +
                                       std::to_string(w.last));

    report.cells.resize(models.size(), std::vector<CellStats>(windows.size()));
    for (std::size_t m = 0; m < models.size(); ++m) {
        for (std::size_t w = 0; w < windows.size(); ++w) {
            std::vector<double> rmse, bias, mae, crps;
            double pooled_sq = 0.0, pooled_abs = 0.0, pooled_err = 0.0, pooled_crps = 0.0;
            for (const RepResult& rep : results) {
                const CellSums& cell = rep.cells[m][w];
                rmse.push_back(cell.rmse);
                bias.push_back(cell.bias);
                mae.push_back(cell.mae);
                crps.push_back(cell.crps);
                pooled_sq += cell.sq_err;
                pooled_abs += cell.abs_err;
                pooled_err += cell.err;
                pooled_crps += cell.crps_sum;
            }
            CellStats stats;
            stats.rmse_se = mean_and_se(rmse).se;
            stats.bias_se = mean_and_se(bias).se;
            stats.mae_se = mean_and_se(mae).se;
            stats.crps_se = mean_and_se(crps).se;
            if (options.aggregation == Aggregation::per_replication_mean) {
                stats.rmse = mean_and_se(rmse).mean;
                stats.mean_bias = mean_and_se(bias).mean;
                stats.mae = mean_and_se(mae).mean;
                stats.crps = mean_and_se(crps).mean;
            } else {
                const double n = static_cast<double>(reps) * windows[w].length();
                stats.rmse = std::sqrt(pooled_sq / n);
                stats.mean_bias = pooled_err / n;
                stats.mae = pooled_abs / n;
                stats.crps = pooled_crps / n;
            }
            report.cells[m][w] = stats;
        }
    }

    if (options.collect_period_averages) {
        const int start = std::max(2, config.train_end - 19);
        const int length = config.horizon - start + 1;
        PeriodAverages& avg = report.period_averages;
        avg.model_labels = report.model_labels;
        for (int i = 0; i < length; ++i) avg.t.push_back(start + i);
        avg.mean_point.assign(models.size(), Series(static_cast<std::size_t>(length), 0.0));
        avg.mean_error.assign(models.size(), Series(static_cast<std::size_t>(length), 0.0));
        avg.mean_actual.assign(static_cast<std::size_t>(length), 0.0);
        for (const RepResult& rep : results) {
            for (std::size_t m = 0; m < models.size(); ++m)
                for (int i = 0; i < length; ++i) {
                    avg.mean_point[m][static_cast<std::size_t>(i)] +=
                        rep.points[m][static_cast<std::size_t>(i)];
                    avg.mean_error[m][static_cast<std::size_t>(i)] +=
                        rep.errors[m][static_cast<std::size_t>(i)];
                }
            for (int i = 0; i < length; ++i)
                avg.mean_actual[static_cast<std::size_t>(i)] +=
                    rep.actual[static_cast<std::size_t>(i)];
        }
        const double n = static_cast<double>(reps);
        for (std::size_t m = 0; m < models.size(); ++m)
            for (int i = 0; i < length; ++i) {
                avg.mean_point[m][static_cast<std::size_t>(i)] /= n;
                avg.mean_error[m][static_cast<std::size_t>(i)] /= n;
            }
        for (int i = 0; i < length; ++i) avg.mean_actual[static_cast<std::size_t>(i)] /= n;
    }
    return report;
}

std::vector<ExperimentReport> sensitivity_sweep(const ScenarioConfig& config,
                                                const std::vector<NoiseSpec>& levels,
                                                int reps, std::uint64_t master_seed,
                                                const ExperimentOptions& options) {
    if (levels.empty()) throw std::invalid_argument("sensitivity_sweep: empty level list");
    std::vector<ExperimentReport> reports;
    reports.reserve(levels.size());
    for (const NoiseSpec& level : levels) {
        ScenarioConfig variant = config;
        variant.supply_noise = level;
        reports.push_back(run_experiment(variant,
                                         {ModelKind::demand_only, ModelKind::coupled_observed},
                                         default_windows(variant), reps, master_seed, options));
    }
    return reports;
}

NestedComparison nested_comparison(const ScenarioConfig& config,
                                   ModelKind base, ModelKind augmented,
                                   int reps, std::uint64_t master_seed, Window window,
                                   const ExperimentOptions& options) {
    NestedComparison comparison;
    comparison.replications = reps;
    int rejections = 0;
    for (int r = 0; r < reps; ++r) {
        ScenarioConfig variant = config;
        variant.seed = derive_seed(master_seed ^ (kReplicationChannel << 56),
                                   static_cast<std::uint64_t>(r));
        const MarketPath path = simulate_market(variant);
        const ForecastSeries base_fc = run_model(base, path, variant, options.forecast);
        const ForecastSeries aug_fc = run_model(augmented, path, variant, options.forecast);
        Series loss_base, loss_aug;
        for (int t = window.first; t <= window.last; ++t) {
            const double actual = path.b[static_cast<std::size_t>(t - 1)];
            const double eb = base_fc.point_at(t) - actual;
            const double ea = aug_fc.point_at(t) - actual;
            loss_base.push_back(eb * eb);
            loss_aug.push_back(ea * ea);
        }
        try {
            const DmResult dm = diebold_mariano(loss_base, loss_aug);
            comparison.dm_stats.push_back(dm.stat);
            comparison.p_values.push_back(dm.p_two_sided);
            if (dm.p_two_sided < 0.05) ++rejections;
        } catch (const std::domain_error&) {
            ++comparison.indistinguishable;
        }
    }
    comparison.rejection_fraction = static_cast<double>(rejections) / static_cast<double>(reps);
    return comparison;
}

} // namespace supcast
