#include "supcast/censored.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "supcast/forecasters.hpp"
#include "supcast/metrics.hpp"

namespace supcast {

double CensoredSample::censored_fraction() const {
    if (censored.empty()) return 0.0;
    std::size_t count = 0;
    for (bool flag : censored) count += flag ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(censored.size());
}

CensoredSample detect_censoring(const Series& b, const Series& ceiling, double tolerance) {
    if (b.size() != ceiling.size())
        throw std::invalid_argument("detect_censoring: length mismatch");
    if (tolerance < 0.0) throw std::invalid_argument("detect_censoring: tolerance must be >= 0");
    CensoredSample sample;
    sample.b = b;
    sample.ceiling = ceiling;
    sample.tolerance = tolerance;
    sample.censored.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        sample.censored[i] = std::abs(b[i] - ceiling[i]) <= tolerance;
    return sample;
}

double inverse_mills(double z) {
    if (z > 8.0) {
        // Laplace continued fraction for the Gaussian hazard; the direct
        // pdf/survival quotient loses nothing here but this path also covers
        // z beyond erfc's underflow range.
        double frac = 0.0;
        for (int k = 40; k >= 1; --k) frac = static_cast<double>(k) / (z + frac);
        return z + frac;
    }
    const double survival = 0.5 * std::erfc(z / std::sqrt(2.0));
    return normal_pdf(z) / survival;
}

namespace {

// log(1 - Phi(z)), stable across the whole axis.
double log_survival(double z) {
    if (z > 8.0) {
        const double log_pdf = -0.5 * std::log(2.0 * M_PI) - 0.5 * z * z;
        return log_pdf - std::log(inverse_mills(z));
    }
    return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
}

// E[X | X >= c] for X ~ N(mu, sd^2).
double truncated_mean(double mu, double sd, double c) {
    const double z = (c - mu) / sd;
    return mu + sd * inverse_mills(z);
}

// Forward pass replacing censored points by truncated-normal means, each
// conditional mean built from the previous imputed value.
Series impute_series(const Ar1Params& params, const CensoredSample& sample) {
    Series completed(sample.b.size());
    double prev = 0.0;
    for (std::size_t t = 0; t < sample.b.size(); ++t) {
        const double mu = t == 0 ? params.mean
                                 : params.mean + params.persistence * (prev - params.mean);
        double value = sample.b[t];
        if (sample.censored[t] && params.sd > 0.0)
            value = std::max(sample.b[t], truncated_mean(mu, params.sd, sample.ceiling[t]));
        completed[t] = value;
        prev = value;
    }
    return completed;
}

} // namespace

double censored_ar1_loglik(const Ar1Params& params, const CensoredSample& sample) {
    if (!(params.sd > 0.0)) throw std::invalid_argument("censored_ar1_loglik: sd must be > 0");
    if (!(std::abs(params.persistence) < 1.0))
        throw std::invalid_argument("censored_ar1_loglik: |persistence| must be < 1");
    const Series imputed = impute_series(params, sample);
    double loglik = 0.0;
    for (std::size_t t = 1; t < sample.b.size(); ++t) {
        const double mu =
            params.mean + params.persistence * (imputed[t - 1] - params.mean);
        if (sample.censored[t]) {
            loglik += log_survival((sample.ceiling[t] - mu) / params.sd);
        } else {
            const double z = (sample.b[t] - mu) / params.sd;
            loglik += -0.5 * std::log(2.0 * M_PI) - std::log(params.sd) - 0.5 * z * z;
        }
    }
    return loglik;
}

EmResult em_censored_ar1(const CensoredSample& sample, const Ar1Params& init,
                         double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("em_censored_ar1: tol must be > 0");
    EmResult result;
    result.params = init;
    Ar1Params best = init;
    double best_loglik = -std::numeric_limits<double>::infinity();

    for (int iter = 1; iter <= max_iter; ++iter) {
        const Series completed = impute_series(result.params, sample);
        const Ar1Params next = fit_ar1(completed);
        const double delta = std::max({std::abs(next.mean - result.params.mean),
                                       std::abs(next.persistence - result.params.persistence),
                                       std::abs(next.sd - result.params.sd)});
        result.params = next;
        result.iterations = iter;
        if (next.sd > 0.0 && std::abs(next.persistence) < 1.0) {
            const double loglik = censored_ar1_loglik(next, sample);
            if (loglik > best_loglik) {
                best_loglik = loglik;
                best = next;
            }
        }
        if (delta < tol) {
            result.converged = true;
            return result;
        }
    }
    result.params = best;
    result.converged = false;
    return result;
}

Series latent_demand_nowcast(const Ar1Params& params, const CensoredSample& sample) {
    return impute_series(params, sample);
}

} // namespace supcast
