#pragma once

#include "idem/ea.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idem::harness {

std::string repr_name(ea::Representation r);
std::string enc_name(genome::Encoding e);
int fit_number(fitness::Objective o);

ea::Representation parse_repr(std::string_view text);
genome::Encoding parse_enc(std::string_view text);
fitness::Objective parse_fit(std::string_view text);

/// Row label in result tables, e.g. "TT_R, LS, fit2".
std::string config_label(ea::Representation r, genome::Encoding e, bool ls, fitness::Objective o);
std::string config_label(const ea::EAConfig& cfg);

/// One JSON object per run. Wall-clock time is included only when
/// `with_timing` is set, so default records are reproducible byte for byte.
nlohmann::ordered_json to_json(const ea::RunResult& result, bool with_timing = false);
nlohmann::ordered_json config_to_json(const ea::EAConfig& cfg);
ea::EAConfig config_from_json(const nlohmann::json& j);

/// Flat view of a run record as read back from JSONL.
struct RunRecord {
    ea::EAConfig config;
    double best_scalar = 0.0;
    std::int64_t best_int = 0;
    int pen = 0;
    std::uint64_t evaluations = 0;
    std::optional<double> seconds;
    std::string genome;
    std::string tt;
    std::vector<ea::TrajectoryPoint> trajectory;
    std::string error;  // non-empty for failed runs

    bool ok() const noexcept { return error.empty(); }
};

RunRecord record_from_json(const nlohmann::json& j);

/// Parses every non-blank line of a JSONL file.
std::vector<RunRecord> read_jsonl(const std::filesystem::path& file);

/// Every *.jsonl file directly inside `dir`, in file-name order.
std::vector<RunRecord> read_results_dir(const std::filesystem::path& dir);

/// "eval_index,best_scalar" rows, one per trajectory point.
std::string trajectory_csv(const std::vector<ea::TrajectoryPoint>& trajectory);

/// Shortest round-trip decimal form, as used in JSON records.
std::string format_number(double value);

}  // namespace idem::harness
