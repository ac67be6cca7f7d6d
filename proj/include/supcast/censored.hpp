#pragma once

#include "supcast/types.hpp"

namespace supcast {

/// Bookings against a known time-varying ceiling, with flags marking the
/// periods where B_t sits at the ceiling (within tolerance).
struct CensoredSample {
    Series b;
    Series ceiling;
    std::vector<bool> censored;
    double tolerance = 0.0;

    double censored_fraction() const;
};

/// censored_t = |B_t - ceiling_t| <= tolerance.
CensoredSample detect_censoring(const Series& b, const Series& ceiling, double tolerance);

/// Inverse Mills ratio pdf(z) / (1 - Phi(z)), stable for large z (continued
/// fraction above z = 8).
double inverse_mills(double z);

/// One-step conditional log-likelihood: Gaussian density at uncensored
/// points, log survival above the ceiling at censored points. Conditioning
/// values at censored t-1 are truncated-normal imputed means.
double censored_ar1_loglik(const Ar1Params& params, const CensoredSample& sample);

struct EmResult {
    Ar1Params params;
    int iterations = 0;
    bool converged = false;
};

/// Pseudo-EM: impute censored points with truncated-normal means, re-fit the
/// AR(1), iterate until max parameter change < tol or max_iter. On
/// non-convergence returns the best iterate by censored log-likelihood.
EmResult em_censored_ar1(const CensoredSample& sample, const Ar1Params& init,
                         double tol, int max_iter);

/// D_hat_t = B_t where uncensored; truncated-normal mean above the ceiling
/// where censored. Always >= B_t.
Series latent_demand_nowcast(const Ar1Params& params, const CensoredSample& sample);

} // namespace supcast
