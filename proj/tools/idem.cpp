// idem: command-line front end for evolving idempotent Boolean functions.

#include "idem/boolfn.hpp"
#include "idem/ea.hpp"
#include "idem/frobenius.hpp"
#include "idem/gf2n.hpp"
#include "idem/harness/batch.hpp"
#include "idem/harness/records.hpp"
#include "idem/harness/report.hpp"
#include "idem/stats.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace idem;

namespace {

fs::path default_output_dir(const char* fallback)
{
    if (const char* env = std::getenv("IDEM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return fallback;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_whitespace(const std::string& text)
{
    std::string out;
    for (char c : text) {
        if (c != ' ' && c != '\n' && c != '\r' && c != '\t') {
            out += c;
        }
    }
    return out;
}

int cmd_field(int n)
{
    const auto poly = gf2n::select_primitive_poly(n);
    std::string bits;
    for (int i = n; i >= 0; --i) {
        bits += (poly.coeffs >> i & 1u) ? '1' : '0';
    }
    std::cout << "n = " << n << "\n";
    std::cout << "polynomial = " << gf2n::to_string(poly) << "\n";
    std::cout << "coefficients (a_n..a_0) = " << bits << "\n";

    std::uint64_t rest = (std::uint64_t{1} << n) - 1;
    std::string factored;
    for (std::uint64_t q : gf2n::prime_factors_of_group_order(n)) {
        int e = 0;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        if (!factored.empty()) {
            factored += " * ";
        }
        factored += std::to_string(q) + (e > 1 ? "^" + std::to_string(e) : "");
    }
    std::cout << "2^n - 1 = " << ((std::uint64_t{1} << n) - 1) << " = " << factored << "\n";
    return 0;
}

int cmd_orbits(int n, bool list, bool check)
{
    const auto ctx = ea::FieldContext::for_degree(n);
    const auto& op = ctx.orbits;
    const auto expected = frobenius::burnside_count(n);
    std::map<std::uint32_t, std::size_t> histogram;
    for (std::uint32_t s : op.orbit_sizes()) {
        ++histogram[s];
    }
    std::cout << "n = " << n << "\n";
    std::cout << "polynomial = " << gf2n::to_string(ctx.poly) << "\n";
    std::cout << "orbits = " << op.count() << "\n";
    std::cout << "burnside = " << expected << "\n";
    std::cout << "size histogram:\n";
    for (const auto& [size, count] : histogram) {
        std::cout << "  " << size << ": " << count << "\n";
    }
    if (list) {
        std::cout << "representatives:";
        for (std::uint32_t r : op.representatives()) {
            std::cout << ' ' << r;
        }
        std::cout << "\n";
    }
    if (check && op.count() != expected) {
        std::cerr << "orbit count " << op.count() << " differs from Burnside count " << expected << "\n";
        return 1;
    }
    return 0;
}

int cmd_analyze(int n, const fs::path& file, bool hex)
{
    const std::string text = strip_whitespace(read_file(file));
    const TruthTable tt = hex ? TruthTable::from_hex(text, n) : TruthTable::from_binary(text);
    if (tt.n() != n) {
        throw std::invalid_argument("truth table has " + std::to_string(tt.size()) + " entries, expected 2^" +
                                    std::to_string(n));
    }
    const auto sm = frobenius::build_square_map(gf2n::select_primitive_poly(n));
    const auto ws = boolfn::walsh_transform(tt);
    std::cout << "nonlinearity = " << boolfn::nonlinearity(ws) << "\n";
    std::cout << "pen = " << boolfn::penalty(tt, sm) << "\n";
    std::cout << "idempotent = " << (frobenius::is_idempotent(tt, sm) ? "yes" : "no") << "\n";
    std::cout << "max_abs_walsh = " << boolfn::max_abs(ws.coeffs) << "\n";
    std::cout << "max_values = " << boolfn::max_value_count(ws) << "\n";
    return 0;
}

struct EvolveOptions {
    ea::EAConfig cfg;
    std::string repr = "tt";
    std::string enc = "r";
    std::string fit = "1";
    std::size_t runs = 1;
    std::string out;
    std::string csv;
    bool timing = false;
};

int cmd_evolve(EvolveOptions opt)
{
    opt.cfg.representation = harness::parse_repr(opt.repr);
    opt.cfg.encoding = harness::parse_enc(opt.enc);
    opt.cfg.objective = harness::parse_fit(opt.fit);
    ea::validate(opt.cfg);

    const bool to_stdout = opt.out == "-";
    std::ofstream file;
    if (!to_stdout) {
        const fs::path path = opt.out.empty() ? default_output_dir(".") / "evolve.jsonl" : fs::path(opt.out);
        if (path.has_parent_path()) {
            fs::create_directories(path.parent_path());
        }
        file.open(path, std::ios::binary | std::ios::app);
        if (!file) {
            throw std::runtime_error("cannot open " + path.string());
        }
    }

    const auto ctx = ea::FieldContext::for_degree(opt.cfg.n);
    std::string csv;
    for (std::size_t r = 0; r < opt.runs; ++r) {
        auto cfg = opt.cfg;
        cfg.seed = opt.cfg.seed + r;
        const auto result = ea::run(cfg, ctx);
        const std::string line = harness::to_json(result, opt.timing).dump();
        if (to_stdout) {
            std::cout << line << "\n";
        } else {
            file << line << "\n";
            std::cout << "best " << harness::format_number(result.best.fitness.scalar) << "\n";
        }
        if (r == 0) {
            csv = harness::trajectory_csv(result.trajectory);
        }
    }
    if (!opt.csv.empty()) {
        std::ofstream(opt.csv, std::ios::binary) << csv;
    }
    return 0;
}

int cmd_batch(const fs::path& spec_file, unsigned threads)
{
    auto spec = harness::parse_experiment_spec_file(spec_file);
    if (spec.output_dir.empty()) {
        spec.output_dir = default_output_dir("results");
    }
    if (threads > 0) {
        spec.threads = threads;
    }
    const auto summary = harness::run_batch(spec, [](std::size_t done, std::size_t total) {
        std::cerr << "\r" << done << "/" << total << " runs" << std::flush;
    });
    std::cerr << "\n";
    std::cout << "runs = " << summary.runs << "\n";
    std::cout << "failures = " << summary.failures << "\n";
    std::cout << "jsonl = " << summary.jsonl.string() << "\n";
    std::cout << "csv = " << summary.csv.string() << "\n";
    return summary.failures == 0 ? 0 : 3;
}

std::vector<double> final_bests(const fs::path& file)
{
    std::vector<double> values;
    for (const auto& rec : harness::read_jsonl(file)) {
        if (rec.ok()) {
            values.push_back(rec.best_scalar);
        }
    }
    return values;
}

int cmd_compare(const fs::path& a, const fs::path& b, double alpha)
{
    const auto va = final_bests(a);
    const auto vb = final_bests(b);
    const auto r = stats::mann_whitney_u(va, vb);
    std::cout << "n_a = " << va.size() << "\n";
    std::cout << "n_b = " << vb.size() << "\n";
    std::cout << "U_a = " << harness::format_number(r.u_a) << "\n";
    std::cout << "U_b = " << harness::format_number(r.u_b) << "\n";
    std::cout << "z = " << harness::format_number(r.z) << "\n";
    if (r.p < 1e-300) {
        std::cout << "p < 1e-300\n";
    } else {
        std::cout << "p = " << harness::format_number(r.p) << "\n";
    }
    std::cout << "verdict = " << (r.p < alpha ? "significant" : "not significant") << " at alpha = "
              << harness::format_number(alpha) << "\n";
    return 0;
}

int cmd_report(const fs::path& dir, const fs::path& out)
{
    const auto records = harness::read_results_dir(dir);
    if (records.empty()) {
        throw std::invalid_argument("report: no *.jsonl records in " + dir.string());
    }
    const auto written = harness::write_report(records, out.empty() ? dir : out);
    std::cout << harness::best_table(harness::group_records(records));
    for (const auto& path : written) {
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evolve highly nonlinear idempotent Boolean functions over GF(2^n)"};
    app.require_subcommand(1);

    int n = 0;

    auto* field = app.add_subcommand("field", "Show the selected primitive polynomial for GF(2^n)");
    field->add_option("--n", n, "Field degree (3..16)")->required();

    bool list = false;
    bool check = false;
    auto* orbits = app.add_subcommand("orbits", "Enumerate Frobenius orbits");
    orbits->add_option("--n", n, "Field degree (3..16)")->required();
    orbits->add_flag("--list", list, "Print every orbit representative");
    orbits->add_flag("--check-burnside", check, "Exit nonzero if the count differs from Burnside's formula");

    std::string tt_file;
    bool hex = false;
    auto* analyze = app.add_subcommand("analyze", "Spectral and idempotence measures of a truth table");
    analyze->add_option("--n", n, "Number of variables")->required();
    analyze->add_option("--tt", tt_file, "Truth table file ('0'/'1' line, or hex with --hex)")->required();
    analyze->add_flag("--hex", hex, "Read the table as hex, most significant nibble first");

    EvolveOptions evo;
    auto* evolve = app.add_subcommand("evolve", "Run the steady-state EA");
    evolve->add_option("--n", evo.cfg.n, "Number of variables")->required();
    evolve->add_option("--repr", evo.repr, "Representation: tt or gp")->capture_default_str();
    evolve->add_option("--enc", evo.enc, "Encoding: u (unrestricted) or r (restricted)")->capture_default_str();
    evolve->add_option("--fit", evo.fit, "Objective: 1 or 2")->capture_default_str();
    evolve->add_flag("--ls", evo.cfg.local_search, "Enable local search after every generation");
    evolve->add_option("--seed", evo.cfg.seed, "Seed of the first run")->capture_default_str();
    evolve->add_option("--budget", evo.cfg.budget, "Fitness evaluations per run")->capture_default_str();
    evolve->add_option("--pop", evo.cfg.population_size, "Population size")->capture_default_str();
    evolve->add_option("--pmut", evo.cfg.p_mut, "Mutation probability")->capture_default_str();
    evolve->add_option("--ls-trials", evo.cfg.ls_trials, "Consecutive failed mutations before local search stops")
        ->capture_default_str();
    evolve->add_option("--ls-fraction", evo.cfg.ls_fraction, "Random individuals per local search pass, as a fraction")
        ->capture_default_str();
    evolve->add_option("--max-depth", evo.cfg.tree_limits.max_depth, "Tree depth limit")->capture_default_str();
    evolve->add_option("--runs", evo.runs, "Repetitions with seeds seed, seed+1, ...")->capture_default_str();
    evolve->add_option("--out", evo.out,
                       "JSONL file to append to ('-' for stdout; default $IDEM_OUTPUT_DIR/evolve.jsonl)");
    evolve->add_option("--csv", evo.csv, "Write the first run's best-fitness trajectory as CSV");
    evolve->add_flag("--timing", evo.timing, "Include wall-clock seconds in the JSON records");

    std::string spec_file;
    unsigned threads = 0;
    auto* batch = app.add_subcommand("batch", "Run an experiment spec file");
    batch->add_option("spec", spec_file, "Batch spec file")->required();
    batch->add_option("--threads", threads, "Worker threads (overrides the spec)");

    std::string file_a;
    std::string file_b;
    double alpha = 0.05;
    auto* compare = app.add_subcommand("compare", "Mann-Whitney U test on two run files");
    compare->add_option("--a", file_a, "First JSONL file")->required();
    compare->add_option("--b", file_b, "Second JSONL file")->required();
    compare->add_option("--alpha", alpha, "Significance level")->capture_default_str();

    std::string results_dir;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Best-value table and boxplots from a results directory");
    report->add_option("dir", results_dir, "Directory with *.jsonl run records")->required();
    report->add_option("--out", report_out, "Output directory (default: the results directory)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (field->parsed()) {
            return cmd_field(n);
        }
        if (orbits->parsed()) {
            return cmd_orbits(n, list, check);
        }
        if (analyze->parsed()) {
            return cmd_analyze(n, tt_file, hex);
        }
        if (evolve->parsed()) {
            return cmd_evolve(evo);
        }
        if (batch->parsed()) {
            return cmd_batch(spec_file, threads);
        }
        if (compare->parsed()) {
            return cmd_compare(file_a, file_b, alpha);
        }
        if (report->parsed()) {
            return cmd_report(results_dir, report_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
