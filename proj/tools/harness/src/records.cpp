#include "idem/harness/records.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace idem::harness {

std::string repr_name(ea::Representation r)
{
    return r == ea::Representation::tt ? "tt" : "gp";
}

std::string enc_name(genome::Encoding e)
{
    return e == genome::Encoding::restricted ? "r" : "u";
}

int fit_number(fitness::Objective o)
{
    return o == fitness::Objective::fit1 ? 1 : 2;
}

ea::Representation parse_repr(std::string_view text)
{
    if (text == "tt" || text == "TT") {
        return ea::Representation::tt;
    }
    if (text == "gp" || text == "GP") {
        return ea::Representation::gp;
    }
    throw std::invalid_argument("unknown representation '" + std::string(text) + "' (expected tt or gp)");
}

genome::Encoding parse_enc(std::string_view text)
{
    if (text == "r" || text == "restricted") {
        return genome::Encoding::restricted;
    }
    if (text == "u" || text == "unrestricted") {
        return genome::Encoding::unrestricted;
    }
    throw std::invalid_argument("unknown encoding '" + std::string(text) + "' (expected u or r)");
}

fitness::Objective parse_fit(std::string_view text)
{
    if (text == "1" || text == "fit1") {
        return fitness::Objective::fit1;
    }
    if (text == "2" || text == "fit2") {
        return fitness::Objective::fit2;
    }
    throw std::invalid_argument("unknown fitness '" + std::string(text) + "' (expected 1 or 2)");
}

std::string config_label(ea::Representation r, genome::Encoding e, bool ls, fitness::Objective o)
{
    std::string label = r == ea::Representation::tt ? "TT" : "GP";
    if (e == genome::Encoding::restricted) {
        label += "_R";
    }
    if (ls) {
        label += ", LS";
    }
    label += ", fit" + std::to_string(fit_number(o));
    return label;
}

std::string config_label(const ea::EAConfig& cfg)
{
    return config_label(cfg.representation, cfg.encoding, cfg.local_search, cfg.objective);
}

nlohmann::ordered_json config_to_json(const ea::EAConfig& cfg)
{
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["repr"] = repr_name(cfg.representation);
    j["enc"] = enc_name(cfg.encoding);
    j["fit"] = fit_number(cfg.objective);
    j["ls"] = cfg.local_search;
    j["seed"] = cfg.seed;
    j["population"] = cfg.population_size;
    j["budget"] = cfg.budget;
    j["p_mut"] = cfg.p_mut;
    j["ls_trials"] = cfg.ls_trials;
    j["ls_fraction"] = cfg.ls_fraction;
    j["max_depth"] = cfg.tree_limits.max_depth;
    return j;
}

ea::EAConfig config_from_json(const nlohmann::json& j)
{
    ea::EAConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.representation = parse_repr(j.at("repr").get<std::string>());
    cfg.encoding = parse_enc(j.at("enc").get<std::string>());
    cfg.objective = parse_fit(std::to_string(j.at("fit").get<int>()));
    cfg.local_search = j.value("ls", false);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.population_size = j.value("population", std::size_t{500});
    cfg.budget = j.value("budget", std::uint64_t{1'000'000});
    cfg.p_mut = j.value("p_mut", 0.5);
    cfg.ls_trials = j.value("ls_trials", 25);
    cfg.ls_fraction = j.value("ls_fraction", 0.01);
    cfg.tree_limits.max_depth = j.value("max_depth", cfg.tree_limits.max_depth);
    return cfg;
}

nlohmann::ordered_json to_json(const ea::RunResult& result, bool with_timing)
{
    const auto& f = result.best.fitness;
    nlohmann::ordered_json best;
    best["scalar"] = f.scalar;
    best["int"] = f.integer_part();
    best["pen"] = f.pen;
    best["nl"] = f.nl;
    best["frac"] = f.frac;
    best["eval_index"] = result.best.eval_index;
    best["genome"] = genome::to_string(result.best.genome);
    best["tt"] = result.best_tt.to_binary();

    nlohmann::ordered_json trajectory = nlohmann::ordered_json::array();
    for (const auto& point : result.trajectory) {
        trajectory.push_back({point.eval_index, point.scalar});
    }

    nlohmann::ordered_json j;
    j["config"] = config_to_json(result.config);
    j["evaluations"] = result.evaluations;
    if (with_timing) {
        j["seconds"] = result.seconds;
    }
    j["best"] = std::move(best);
    j["trajectory"] = std::move(trajectory);
    return j;
}

RunRecord record_from_json(const nlohmann::json& j)
{
    RunRecord r;
    r.config = config_from_json(j.at("config"));
    if (j.contains("error")) {
        r.error = j.at("error").get<std::string>();
        return r;
    }
    const auto& best = j.at("best");
    r.best_scalar = best.at("scalar").get<double>();
    r.best_int = best.at("int").get<std::int64_t>();
    r.pen = best.at("pen").get<int>();
    r.genome = best.value("genome", "");
    r.tt = best.value("tt", "");
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    if (j.contains("seconds")) {
        r.seconds = j.at("seconds").get<double>();
    }
    for (const auto& point : j.value("trajectory", nlohmann::json::array())) {
        r.trajectory.push_back({point.at(0).get<std::uint64_t>(), point.at(1).get<double>()});
    }
    return r;
}

std::vector<RunRecord> read_jsonl(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw std::runtime_error("cannot open " + file.string());
    }
    std::vector<RunRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<RunRecord> read_results_dir(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RunRecord> records;
    for (const auto& file : files) {
        auto part = read_jsonl(file);
        records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return records;
}

std::string format_number(double value)
{
    return nlohmann::json(value).dump();
}

std::string trajectory_csv(const std::vector<ea::TrajectoryPoint>& trajectory)
{
    std::string out = "eval_index,best_scalar\n";
    for (const auto& point : trajectory) {
        out += std::to_string(point.eval_index) + "," + format_number(point.scalar) + "\n";
    }
    return out;
}

}  // namespace idem::harness
