#include "idem/harness/batch.hpp"
#include "idem/harness/records.hpp"
#include "idem/harness/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace idem;
using namespace idem::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("idem_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ExperimentSpec small_spec(const fs::path& out)
{
    std::istringstream in(
        "# two configurations, three repetitions\n"
        "repetitions = 3\n"
        "base_seed = 5\n"
        "budget = 300\n"
        "population = 20\n"
        "run = n=6 repr=tt enc=r fit=2 ls=off\n"
        "run = n=6 repr=gp enc=u fit=1 ls=on\n");
    auto spec = parse_experiment_spec(in);
    spec.output_dir = out;
    return spec;
}

}  // namespace

TEST_CASE("run records round trip through JSON")
{
    ea::EAConfig cfg;
    cfg.n = 6;
    cfg.population_size = 20;
    cfg.budget = 300;
    cfg.local_search = true;
    cfg.objective = fitness::Objective::fit2;
    const auto result = ea::run(cfg);
    const auto j = to_json(result);
    CHECK_FALSE(j.contains("seconds"));
    CHECK(to_json(result, true).contains("seconds"));

    const auto rec = record_from_json(nlohmann::json::parse(j.dump()));
    CHECK(rec.ok());
    CHECK(rec.best_scalar == result.best.fitness.scalar);
    CHECK(rec.best_int == result.best.fitness.integer_part());
    CHECK(rec.evaluations == 300);
    CHECK(rec.trajectory == result.trajectory);
    CHECK(rec.tt == result.best_tt.to_binary());
    CHECK(config_to_json(rec.config) == config_to_json(cfg));
    CHECK(config_label(rec.config) == "TT_R, LS, fit2");
}

TEST_CASE("trajectory CSV")
{
    const std::vector<ea::TrajectoryPoint> t{{1, 0.5}, {40, 2.0}};
    CHECK(trajectory_csv(t) == "eval_index,best_scalar\n1,0.5\n40,2.0\n");
}

TEST_CASE("batch spec parsing")
{
    const auto spec = small_spec("out");
    REQUIRE(spec.configs.size() == 2);
    CHECK(spec.repetitions == 3);
    CHECK(spec.base_seed == 5);
    CHECK(spec.configs[0].budget == 300);
    CHECK(spec.configs[1].representation == ea::Representation::gp);
    CHECK(spec.configs[1].encoding == genome::Encoding::unrestricted);
    CHECK(spec.configs[1].local_search);

    const auto runs = expand_runs(spec);
    REQUIRE(runs.size() == 6);
    CHECK(runs[0].seed == 5);
    CHECK(runs[2].seed == 7);
    CHECK(runs[3].seed == 5);
    CHECK(runs[3].representation == ea::Representation::gp);

    for (const char* bad : {"run = n=8 repr=xx\n", "repetitions = zero\n", "unknown_key = 1\n", "no equals sign\n",
                            "run = n=40\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(parse_experiment_spec(in), std::invalid_argument);
    }
}

TEST_CASE("batch output is complete and reproducible")
{
    const auto dir_a = scratch_dir("batch_a");
    const auto dir_b = scratch_dir("batch_b");
    auto spec = small_spec(dir_a);
    spec.threads = 2;
    const auto sa = run_batch(spec);
    CHECK(sa.runs == 6);
    CHECK(sa.failures == 0);

    const auto records = read_jsonl(sa.jsonl);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CHECK(r.ok());
        CHECK(r.evaluations == 300);
    }
    std::istringstream csv(slurp(sa.csv));
    std::string line;
    std::getline(csv, line);
    CHECK(line == kAggregateHeader);
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
    }
    CHECK(rows == 6);

    spec.output_dir = dir_b;
    spec.threads = 1;
    const auto sb = run_batch(spec);
    CHECK(slurp(sa.jsonl) == slurp(sb.jsonl));

    const auto ra = write_report(read_results_dir(dir_a), dir_a / "report");
    const auto rb = write_report(read_results_dir(dir_b), dir_b / "report");
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(slurp(ra[i]) == slurp(rb[i]));
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("report rendering")
{
    ea::EAConfig tt;
    tt.n = 8;
    ea::EAConfig gp = tt;
    gp.representation = ea::Representation::gp;
    gp.encoding = genome::Encoding::unrestricted;
    std::vector<RunRecord> records;
    for (double v : {-12.0, -4.0}) {
        RunRecord r;
        r.config = gp;
        r.best_scalar = v;
        r.best_int = static_cast<std::int64_t>(v);
        records.push_back(r);
    }
    for (int i = 0; i < 3; ++i) {
        RunRecord r;
        r.config = tt;
        r.best_scalar = 116.0;
        r.best_int = 116;
        records.push_back(r);
    }
    RunRecord failed;
    failed.config = tt;
    failed.error = "boom";
    records.push_back(failed);

    const auto groups = group_records(records);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].label == "GP, fit1");
    CHECK(groups[1].label == "TT_R, fit1");
    CHECK(groups[1].values.size() == 3);

    const auto table = best_table(groups);
    CHECK(table.find("| GP, fit1 | -4 |") != std::string::npos);
    CHECK(table.find("| TT_R, fit1 | 116 |") != std::string::npos);

    const auto svg = boxplot_svg(8, groups);
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("Comparison for n = 8 variables") != std::string::npos);
    CHECK(svg == boxplot_svg(8, groups));

    CHECK_THROWS_AS(write_report({failed}, scratch_dir("empty")), std::invalid_argument);
}
