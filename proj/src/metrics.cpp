#include "supcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace supcast {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

namespace {

void check_window(const ForecastSeries& forecast, const Series& actual, Window window) {
    if (window.first > window.last) throw std::invalid_argument("metrics: empty window");
    if (!forecast.covers(window.first) || !forecast.covers(window.last))
        throw std::invalid_argument("metrics: window outside forecast range");
    if (static_cast<std::size_t>(window.last) > actual.size())
        throw std::invalid_argument("metrics: window outside actual series");
}

} // namespace

PointMetrics point_metrics(const ForecastSeries& forecast, const Series& actual, Window window) {
    check_window(forecast, actual, window);
    double sum_sq = 0.0, sum_abs = 0.0, sum = 0.0;
    for (int t = window.first; t <= window.last; ++t) {
        const double err = forecast.point_at(t) - actual[static_cast<std::size_t>(t - 1)];
        sum_sq += err * err;
        sum_abs += std::abs(err);
        sum += err;
    }
    const double n = static_cast<double>(window.length());
    return {std::sqrt(sum_sq / n), sum_abs / n, sum / n};
}

double mase(const ForecastSeries& forecast, const Series& actual, const Series& train,
            Window window) {
    check_window(forecast, actual, window);
    if (train.size() < 2) throw std::invalid_argument("mase: train length must be >= 2");
    double naive_mae = 0.0;
    for (std::size_t i = 1; i < train.size(); ++i) naive_mae += std::abs(train[i] - train[i - 1]);
    naive_mae /= static_cast<double>(train.size() - 1);
    if (!(naive_mae > 0.0)) throw std::invalid_argument("mase: constant training series");
    return point_metrics(forecast, actual, window).mae / naive_mae;
}

double mase(const ForecastSeries& forecast, const Series& actual, const Series& train) {
    return mase(forecast, actual, train, {forecast.start, forecast.end});
}

double crps_gaussian(double mean, double sd, double y) {
    if (sd < 0.0) throw std::invalid_argument("crps_gaussian: sd must be >= 0");
    if (sd == 0.0) return std::abs(y - mean);
    const double z = (y - mean) / sd;
    return sd * (z * (2.0 * normal_cdf(z) - 1.0) + 2.0 * normal_pdf(z) - 1.0 / std::sqrt(M_PI));
}

double crps_empirical(std::vector<double> samples, double y) {
    if (samples.empty()) throw std::invalid_argument("crps_empirical: empty sample set");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double abs_term = 0.0, spread_term = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        abs_term += std::abs(samples[i] - y);
        // sum_{i<j} (x_(j) - x_(i)) accumulated via sorted ranks
        spread_term += (2.0 * static_cast<double>(i + 1) - n - 1.0) * samples[i];
    }
    return abs_term / n - spread_term / (n * n);
}

DmResult diebold_mariano(const Series& loss_a, const Series& loss_b, int hac_lag) {
    if (loss_a.size() != loss_b.size())
        throw std::invalid_argument("diebold_mariano: length mismatch");
    const std::size_t n = loss_a.size();
    if (n < 10) throw std::invalid_argument("diebold_mariano: need at least 10 observations");
    Series d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = loss_a[i] - loss_b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);

    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    if (!(var > 0.0) || var < 1e-12 * (1.0 + mean * mean))
        throw std::domain_error("diebold_mariano: indistinguishable losses (zero variance)");

    double lrv = var;
    if (hac_lag > 0) {
        for (int lag = 1; lag <= hac_lag; ++lag) {
            double gamma = 0.0;
            for (std::size_t i = static_cast<std::size_t>(lag); i < n; ++i)
                gamma += (d[i] - mean) * (d[i - static_cast<std::size_t>(lag)] - mean);
            gamma /= static_cast<double>(n);
            const double weight = 1.0 - static_cast<double>(lag) / (hac_lag + 1.0);
            lrv += 2.0 * weight * gamma;
        }
        lrv = std::max(lrv, 1e-12 * var);
    }

    DmResult result;
    result.stat = mean / std::sqrt(lrv / static_cast<double>(n));
    result.p_two_sided = std::erfc(std::abs(result.stat) / std::sqrt(2.0));
    return result;
}

} // namespace supcast
