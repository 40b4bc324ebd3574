#pragma once

#include <span>
#include <string>
#include <vector>

namespace idem::stats {

struct SampleBatch {
    std::string label;
    std::vector<double> values;
};

struct MannWhitneyResult {
    double u_a = 0.0;  // U statistic of the first sample
    double u_b = 0.0;  // u_a + u_b = |a| * |b|
    double z = 0.0;
    double p = 1.0;    // two-sided
};

/// Two-sided Mann-Whitney U test. Midranks for ties; p from the normal
/// approximation with tie and continuity corrections.
/// Throws std::invalid_argument if either sample has fewer than two values.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
MannWhitneyResult mann_whitney_u(const SampleBatch& a, const SampleBatch& b);

/// Midranks (1-based) of `values`, ties sharing the mean of their positions.
std::vector<double> midranks(std::span<const double> values);

struct Summary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// Five-number summary plus mean. Quartiles are medians of the lower and upper
/// halves, excluding the middle element when the count is odd.
/// Throws std::invalid_argument on an empty sample.
Summary summarize(std::span<const double> values);

}  // namespace idem::stats
