#pragma once

#include "idem/ea.hpp"
#include "idem/harness/records.hpp"

#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <vector>

namespace idem::harness {

/// A set of configurations, each repeated `repetitions` times. Repetition r of
/// every configuration runs with seed base_seed + r.
struct ExperimentSpec {
    std::vector<ea::EAConfig> configs;
    std::size_t repetitions = 30;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir;  // empty: caller decides (CLI: $IDEM_OUTPUT_DIR or ./results)
    unsigned threads = 1;
};

/// Parses the key-value batch format:
///
///     # comment
///     output      = results/n8
///     repetitions = 30
///     base_seed   = 1
///     threads     = 4
///     budget      = 1000000      # defaults for the run lines below
///     population  = 500
///     run = n=8 repr=tt enc=r fit=2 ls=off
///
/// Default keys apply to every `run` line that follows them; a run line may
/// override any of n, repr, enc, fit, ls, budget, population, p_mut, ls_trials,
/// ls_fraction. Throws std::invalid_argument with the line number on errors.
ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec parse_experiment_spec_file(const std::filesystem::path& file);

/// Expanded run list in output order: configuration-major, repetition-minor.
std::vector<ea::EAConfig> expand_runs(const ExperimentSpec& spec);

struct BatchSummary {
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::filesystem::path jsonl;
    std::filesystem::path csv;
};

/// Runs everything on a pool of spec.threads workers. Records are written to
/// runs.jsonl in run-list order by a single writer, so identical specs give
/// byte-identical files; a failed run yields an {"config", "error"} record and
/// the batch continues. aggregate.csv gets one row per run.
BatchSummary run_batch(const ExperimentSpec& spec,
                       const std::function<void(std::size_t done, std::size_t total)>& progress = {});

/// Header of the aggregate CSV.
inline constexpr const char* kAggregateHeader = "n,repr,enc,fit,ls,seed,best_scalar,best_int,pen,evals,seconds";

}  // namespace idem::harness
