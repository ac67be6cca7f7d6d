#pragma once

#include "supcast/rng.hpp"
#include "supcast/types.hpp"

namespace supcast {

/// A point on the simplex: nonnegative parts summing to 1. Zeros are
/// tolerated at construction (pre-replacement); clr and the distances
/// require strict positivity and will reject zero parts.
class Composition {
public:
    explicit Composition(std::vector<double> parts);

    const std::vector<double>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    double operator[](std::size_t i) const { return parts_[i]; }
    bool strictly_positive() const;

private:
    std::vector<double> parts_;
};

/// v / sum(v). Zeros preserved; all-zero input is an error.
Composition close(const std::vector<double>& v);

/// Multiplicative zero replacement: zeros become delta, nonzero parts are
/// scaled by (1 - z*delta). Requires 0 < delta < min nonzero part.
Composition zero_replace(const Composition& c, double delta);

/// Centered log-ratio: log parts minus their mean; sums to 0.
std::vector<double> clr(const Composition& c);

/// || clr(p) - clr(q) ||_2.
double aitchison_distance(const Composition& p, const Composition& q);

/// Total-variation distance 0.5 * sum |p_i - q_i|, in [0, 1].
double l1_distance(const Composition& p, const Composition& q);

/// Aitchison perturbation: componentwise product then closure.
Composition perturb(const Composition& p, const Composition& r);

/// Per-period divergence between paired (search, booking) compositions.
struct GapSeries {
    std::vector<int> t;
    Series d_aitchison;
    Series d_l1;
    std::vector<bool> binding; // optional annotation for export
};

GapSeries gap_series(const std::vector<Composition>& search,
                     const std::vector<Composition>& book);

/// Synthetic paired lead-time compositions. Search shares are Dirichlet
/// draws around a fixed mean; booking shares equal search shares in slack
/// periods and are perturbed toward the shortest lead-time bin with
/// magnitude shift_strength in binding periods.
std::pair<std::vector<Composition>, std::vector<Composition>>
simulate_gap_compositions(int k, const std::vector<bool>& binding,
                          double shift_strength, double concentration, Rng& rng);

} // namespace supcast
