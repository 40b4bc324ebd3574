#include "idem/harness/batch.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace idem::harness {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

bool parse_bool(const std::string& v)
{
    if (v == "on" || v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "off" || v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw std::invalid_argument("expected on/off, got '" + v + "'");
}

// Applies one run-level key; returns false for keys that are not run-level.
bool apply_run_key(ea::EAConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "n") {
        cfg.n = std::stoi(value);
    } else if (key == "repr") {
        cfg.representation = parse_repr(value);
    } else if (key == "enc") {
        cfg.encoding = parse_enc(value);
    } else if (key == "fit") {
        cfg.objective = parse_fit(value);
    } else if (key == "ls") {
        cfg.local_search = parse_bool(value);
    } else if (key == "budget") {
        cfg.budget = std::stoull(value);
    } else if (key == "population" || key == "pop") {
        cfg.population_size = std::stoull(value);
    } else if (key == "p_mut") {
        cfg.p_mut = std::stod(value);
    } else if (key == "ls_trials") {
        cfg.ls_trials = std::stoi(value);
    } else if (key == "ls_fraction") {
        cfg.ls_fraction = std::stod(value);
    } else if (key == "max_depth") {
        cfg.tree_limits.max_depth = std::stoi(value);
    } else {
        return false;
    }
    return true;
}

std::string csv_row(const ea::EAConfig& cfg, const RunRecord* rec, std::optional<double> seconds)
{
    std::ostringstream row;
    row << cfg.n << ',' << repr_name(cfg.representation) << ',' << enc_name(cfg.encoding) << ','
        << fit_number(cfg.objective) << ',' << (cfg.local_search ? "on" : "off") << ',' << cfg.seed << ',';
    if (rec != nullptr) {
        row << format_number(rec->best_scalar) << ',' << rec->best_int << ',' << rec->pen << ',' << rec->evaluations;
    } else {
        row << ",,,";
    }
    row << ',';
    if (seconds) {
        row << format_number(*seconds);
    }
    return row.str();
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& in)
{
    ExperimentSpec spec;
    ea::EAConfig defaults;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) {
            continue;
        }
        try {
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("expected key = value");
            }
            const std::string key = trim(std::string_view(body).substr(0, eq));
            const std::string value = trim(std::string_view(body).substr(eq + 1));
            if (key == "run") {
                ea::EAConfig cfg = defaults;
                std::istringstream fields(value);
                std::string field;
                while (fields >> field) {
                    const auto sep = field.find('=');
                    if (sep == std::string::npos || !apply_run_key(cfg, field.substr(0, sep), field.substr(sep + 1))) {
                        throw std::invalid_argument("bad run field '" + field + "'");
                    }
                }
                ea::validate(cfg);
                spec.configs.push_back(cfg);
            } else if (key == "output") {
                spec.output_dir = value;
            } else if (key == "repetitions") {
                spec.repetitions = std::stoull(value);
            } else if (key == "base_seed") {
                spec.base_seed = std::stoull(value);
            } else if (key == "threads") {
                spec.threads = static_cast<unsigned>(std::stoul(value));
            } else if (!apply_run_key(defaults, key, value)) {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("batch spec line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (spec.configs.empty()) {
        throw std::invalid_argument("batch spec: no run lines");
    }
    if (spec.repetitions < 1) {
        throw std::invalid_argument("batch spec: repetitions must be at least 1");
    }
    if (spec.threads < 1) {
        spec.threads = 1;
    }
    return spec;
}

ExperimentSpec parse_experiment_spec_file(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw std::runtime_error("cannot open " + file.string());
    }
    return parse_experiment_spec(in);
}

std::vector<ea::EAConfig> expand_runs(const ExperimentSpec& spec)
{
    std::vector<ea::EAConfig> runs;
    runs.reserve(spec.configs.size() * spec.repetitions);
    for (const auto& cfg : spec.configs) {
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            auto run = cfg;
            run.seed = spec.base_seed + r;
            runs.push_back(run);
        }
    }
    return runs;
}

BatchSummary run_batch(const ExperimentSpec& spec,
                       const std::function<void(std::size_t done, std::size_t total)>& progress)
{
    const auto runs = expand_runs(spec);
    const std::filesystem::path out_dir = spec.output_dir.empty() ? std::filesystem::path("results") : spec.output_dir;
    std::filesystem::create_directories(out_dir);

    // Field structures are built once per n and shared read-only by workers.
    std::map<int, std::unique_ptr<ea::FieldContext>> contexts;
    for (const auto& cfg : runs) {
        if (!contexts.contains(cfg.n)) {
            contexts.emplace(cfg.n, std::make_unique<ea::FieldContext>(ea::FieldContext::for_degree(cfg.n)));
        }
    }

    struct Slot {
        std::string json;
        std::string csv;
        bool failed = false;
        bool ready = false;
    };
    std::vector<Slot> slots(runs.size());
    std::mutex mutex;
    std::condition_variable ready_cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
            Slot slot;
            try {
                const auto result = ea::run(runs[i], *contexts.at(runs[i].n));
                const auto json = to_json(result);
                const auto rec = record_from_json(json);
                slot.json = json.dump();
                slot.csv = csv_row(runs[i], &rec, result.seconds);
            } catch (const std::exception& e) {
                nlohmann::ordered_json j;
                j["config"] = config_to_json(runs[i]);
                j["error"] = e.what();
                slot.json = j.dump();
                slot.csv = csv_row(runs[i], nullptr, std::nullopt);
                slot.failed = true;
            }
            slot.ready = true;
            {
                std::lock_guard lock(mutex);
                slots[i] = std::move(slot);
            }
            ready_cv.notify_one();
        }
    };

    BatchSummary summary;
    summary.runs = runs.size();
    summary.jsonl = out_dir / "runs.jsonl";
    summary.csv = out_dir / "aggregate.csv";
    std::ofstream jsonl(summary.jsonl, std::ios::binary | std::ios::trunc);
    std::ofstream csv(summary.csv, std::ios::binary | std::ios::trunc);
    if (!jsonl || !csv) {
        throw std::runtime_error("cannot write into " + out_dir.string());
    }
    csv << kAggregateHeader << '\n';

    const unsigned pool = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(runs.size())));
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < pool; ++t) {
        workers.emplace_back(worker);
    }

    // Single writer: emit records strictly in run-list order.
    for (std::size_t i = 0; i < runs.size(); ++i) {
        Slot slot;
        {
            std::unique_lock lock(mutex);
            ready_cv.wait(lock, [&] { return slots[i].ready; });
            slot = std::move(slots[i]);
        }
        jsonl << slot.json << '\n';
        csv << slot.csv << '\n';
        jsonl.flush();
        summary.failures += slot.failed ? 1 : 0;
        if (progress) {
            progress(i + 1, runs.size());
        }
    }
    return summary;
}

}  // namespace idem::harness
