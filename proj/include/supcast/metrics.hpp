#pragma once

#include "supcast/types.hpp"

namespace supcast {

/// Inclusive 1-based period range.
struct Window {
    int first = 0;
    int last = 0;

    int length() const { return last - first + 1; }
};

struct PointMetrics {
    double rmse = 0.0;
    double mae = 0.0;
    double mean_bias = 0.0; // mean(forecast - actual); over-prediction positive
};

/// Standard point metrics over `window`; `actual` is the full path series
/// (actual[t-1] is period t).
PointMetrics point_metrics(const ForecastSeries& forecast, const Series& actual, Window window);

/// Test MAE divided by the in-sample one-step naive MAE of `train`.
double mase(const ForecastSeries& forecast, const Series& actual, const Series& train, Window window);
double mase(const ForecastSeries& forecast, const Series& actual, const Series& train);

/// Closed-form Gaussian CRPS; degenerates to |y - mean| at sd = 0.
double crps_gaussian(double mean, double sd, double y);

/// Exact sample CRPS E|X-y| - 0.5 E|X-X'| in O(n log n).
double crps_empirical(std::vector<double> samples, double y);

struct DmResult {
    double stat = 0.0;
    double p_two_sided = 1.0;
};

/// Diebold-Mariano equal-accuracy test on loss differentials. hac_lag = 0
/// (one-step default) uses the plain sample variance; hac_lag > 0 applies a
/// Bartlett lag window. Throws on zero differential variance.
DmResult diebold_mariano(const Series& loss_a, const Series& loss_b, int hac_lag = 0);

double normal_cdf(double z);
double normal_pdf(double z);

} // namespace supcast
