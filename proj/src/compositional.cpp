#include "supcast/compositional.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace supcast {

namespace {

constexpr double kSumTolerance = 1e-9;

void require_same_dimension(const Composition& p, const Composition& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("composition: dimension mismatch");
}

} // namespace

Composition::Composition(std::vector<double> parts) : parts_(std::move(parts)) {
    if (parts_.size() < 2)
        throw std::invalid_argument("Composition: dimension must be >= 2");
    double sum = 0.0;
    for (double part : parts_) {
        if (!(part >= 0.0) || !std::isfinite(part))
            throw std::invalid_argument("Composition: parts must be finite and >= 0");
        sum += part;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("Composition: parts must sum to 1");
}

bool Composition::strictly_positive() const {
    for (double part : parts_)
        if (!(part > 0.0)) return false;
    return true;
}

Composition close(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) {
        if (!(x >= 0.0)) throw std::invalid_argument("close: parts must be >= 0");
        sum += x;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("close: all-zero vector");
    std::vector<double> parts(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) parts[i] = v[i] / sum;
    return Composition(std::move(parts));
}

Composition zero_replace(const Composition& c, double delta) {
    std::size_t zeros = 0;
    double min_nonzero = 1.0;
    for (double part : c.parts()) {
        if (part == 0.0)
            ++zeros;
        else
            min_nonzero = std::min(min_nonzero, part);
    }
    if (zeros == 0) return c;
    if (!(delta > 0.0 && delta < min_nonzero))
        throw std::invalid_argument("zero_replace: delta must lie in (0, min nonzero part)");
    const double scale = 1.0 - static_cast<double>(zeros) * delta;
    if (!(scale > 0.0)) throw std::invalid_argument("zero_replace: delta too large");
    std::vector<double> parts(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        parts[i] = c[i] == 0.0 ? delta : c[i] * scale;
    return close(parts);
}

std::vector<double> clr(const Composition& c) {
    if (!c.strictly_positive())
        throw std::domain_error("clr: zero parts; apply zero_replace first");
    std::vector<double> logs(c.size());
    double mean_log = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        logs[i] = std::log(c[i]);
        mean_log += logs[i];
    }
    mean_log /= static_cast<double>(c.size());
    for (double& v : logs) v -= mean_log;
    return logs;
}

double aitchison_distance(const Composition& p, const Composition& q) {
    require_same_dimension(p, q);
    const std::vector<double> cp = clr(p);
    const std::vector<double> cq = clr(q);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < cp.size(); ++i) sum_sq += (cp[i] - cq[i]) * (cp[i] - cq[i]);
    return std::sqrt(sum_sq);
}

double l1_distance(const Composition& p, const Composition& q) {
    require_same_dimension(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return 0.5 * sum;
}

Composition perturb(const Composition& p, const Composition& r) {
    require_same_dimension(p, r);
    std::vector<double> parts(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) parts[i] = p[i] * r[i];
    return close(parts);
}

GapSeries gap_series(const std::vector<Composition>& search,
                     const std::vector<Composition>& book) {
    if (search.size() != book.size())
        throw std::invalid_argument("gap_series: length mismatch");
    GapSeries gaps;
    gaps.t.reserve(search.size());
    for (std::size_t i = 0; i < search.size(); ++i) {
        gaps.t.push_back(static_cast<int>(i + 1));
        gaps.d_aitchison.push_back(aitchison_distance(search[i], book[i]));
        gaps.d_l1.push_back(l1_distance(search[i], book[i]));
    }
    return gaps;
}

std::pair<std::vector<Composition>, std::vector<Composition>>
simulate_gap_compositions(int k, const std::vector<bool>& binding,
                          double shift_strength, double concentration, Rng& rng) {
    if (k < 2) throw std::invalid_argument("simulate_gap_compositions: dimension must be >= 2");
    if (shift_strength < 0.0)
        throw std::invalid_argument("simulate_gap_compositions: shift_strength must be >= 0");
    if (!(concentration > 0.0))
        throw std::invalid_argument("simulate_gap_compositions: concentration must be > 0");

    // Fixed lead-time mean: geometrically decaying mass from the shortest bin.
    std::vector<double> mean(static_cast<std::size_t>(k));
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        mean[static_cast<std::size_t>(i)] = std::pow(0.7, i);
        total += mean[static_cast<std::size_t>(i)];
    }
    for (double& m : mean) m /= total;

    // Perturbation vector pushing mass toward the shortest lead-time bin.
    std::vector<double> shift(static_cast<std::size_t>(k), 1.0);
    shift[0] = std::exp(shift_strength);
    const Composition shift_comp = close(shift);

    std::vector<Composition> search, book;
    search.reserve(binding.size());
    book.reserve(binding.size());
    for (bool bind : binding) {
        std::vector<double> draw(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            std::gamma_distribution<double> gamma(concentration * mean[static_cast<std::size_t>(i)], 1.0);
            draw[static_cast<std::size_t>(i)] = std::max(gamma(rng), 1e-12);
        }
        Composition s = close(draw);
        search.push_back(s);
        book.push_back(bind && shift_strength > 0.0 ? perturb(s, shift_comp) : s);
    }
    return {std::move(search), std::move(book)};
}

} // namespace supcast
