#pragma once

#include "idem/harness/records.hpp"
#include "idem/stats.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace idem::harness {

/// Runs sharing n and configuration label.
struct ConfigGroup {
    int n = 0;
    std::string label;
    ea::EAConfig config;              // of the first run in the group
    std::vector<double> values;       // final best scalars
    std::vector<std::int64_t> ints;   // their integer parts
};

/// Successful records grouped by (n, label), sorted by n and then by the
/// canonical row order (representation, encoding, local search, fitness).
std::vector<ConfigGroup> group_records(const std::vector<RunRecord>& records);

/// Markdown table of the best integer fitness per label (rows) and n (columns).
std::string best_table(const std::vector<ConfigGroup>& groups);

/// Standalone SVG with one box (min, q1, median, q3, max) per group.
std::string boxplot_svg(int n, const std::vector<ConfigGroup>& groups);

/// Writes table.md and boxplot_n<N>.svg into out_dir and returns the written paths.
/// Throws std::invalid_argument when there is no successful record.
std::vector<std::filesystem::path> write_report(const std::vector<RunRecord>& records,
                                                const std::filesystem::path& out_dir);

}  // namespace idem::harness
