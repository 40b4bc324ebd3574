#include "idem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace idem::stats {

namespace {

double median_of_sorted(std::span<const double> sorted)
{
    const std::size_t m = sorted.size();
    return m % 2 == 1 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
}

}  // namespace

std::vector<double> midranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

    std::vector<double> ranks(values.size());
    for (std::size_t start = 0; start < order.size();) {
        std::size_t end = start + 1;
        while (end < order.size() && values[order[end]] == values[order[start]]) {
            ++end;
        }
        const double rank = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = start; k < end; ++k) {
            ranks[order[k]] = rank;
        }
        start = end;
    }
    return ranks;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("mann_whitney_u: each sample needs at least two values");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = midranks(pooled);

    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const double total = na + nb;
    const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);

    MannWhitneyResult r;
    r.u_a = rank_sum_a - na * (na + 1.0) / 2.0;
    r.u_b = na * nb - r.u_a;

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t start = 0; start < sorted.size();) {
        std::size_t end = start + 1;
        while (end < sorted.size() && sorted[end] == sorted[start]) {
            ++end;
        }
        const auto t = static_cast<double>(end - start);
        tie_term += t * t * t - t;
        start = end;
    }
    const double variance = na * nb / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (variance <= 0.0) {
        return r;  // every value tied: no evidence either way
    }
    const double deviation = std::abs(r.u_a - na * nb / 2.0);
    r.z = std::max(0.0, deviation - 0.5) / std::sqrt(variance);
    r.p = std::clamp(std::erfc(r.z / std::sqrt(2.0)), 0.0, 1.0);
    return r;
}

MannWhitneyResult mann_whitney_u(const SampleBatch& a, const SampleBatch& b)
{
    return mann_whitney_u(a.values, b.values);
}

Summary summarize(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("summarize: empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const std::span<const double> all(sorted);

    Summary s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = median_of_sorted(all);
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(m);
    if (m == 1) {
        s.q1 = s.q3 = sorted.front();
    } else {
        const std::size_t half = m / 2;
        s.q1 = median_of_sorted(all.first(half));
        s.q3 = median_of_sorted(all.last(half));
    }
    return s;
}

}  // namespace idem::stats
