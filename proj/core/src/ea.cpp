#include "idem/ea.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace idem::ea {

void validate(const EAConfig& cfg)
{
    auto fail = [](const std::string& what) { throw std::invalid_argument("invalid configuration: " + what); };
    if (cfg.n < gf2n::kMinDegree || cfg.n > gf2n::kMaxDegree) {
        fail("n must be in 3..=16");
    }
    if (cfg.population_size < 3) {
        fail("population size must be at least 3");
    }
    if (cfg.budget < cfg.population_size) {
        fail("budget must be at least the population size");
    }
    if (!(cfg.p_mut >= 0.0 && cfg.p_mut <= 1.0)) {
        fail("mutation probability must lie in [0, 1]");
    }
    if (cfg.local_search && cfg.ls_trials < 1) {
        fail("local search needs at least one trial");
    }
    if (cfg.local_search && !(cfg.ls_fraction >= 0.0 && cfg.ls_fraction <= 1.0)) {
        fail("local search fraction must lie in [0, 1]");
    }
    const auto& lim = cfg.tree_limits;
    if (lim.init_min_depth < 0 || lim.init_min_depth > lim.init_max_depth || lim.init_max_depth > lim.max_depth ||
        lim.mutation_max_depth < 0) {
        fail("inconsistent tree depth limits");
    }
}

FieldContext FieldContext::for_degree(int n)
{
    const auto poly = gf2n::select_primitive_poly(n);
    auto sm = frobenius::build_square_map(poly);
    auto orbits = frobenius::enumerate_orbits(sm);
    return {poly, std::move(sm), std::move(orbits)};
}

Engine::Engine(const EAConfig& cfg, const FieldContext& ctx)
    : cfg_((validate(cfg), cfg)),
      ctx_(&ctx),
      rng_(cfg.seed),
      evaluator_(ctx.square_map, cfg.objective),
      scratch_(std::size_t{1} << cfg.n)
{
    if (ctx.square_map.n() != cfg.n) {
        throw std::invalid_argument("invalid configuration: field context built for a different n");
    }
}

genome::Genotype Engine::random_genome(std::size_t slot)
{
    if (cfg_.representation == Representation::gp) {
        return genome::random_tree_ramped(cfg_.n, cfg_.tree_limits, slot, rng_);
    }
    const std::size_t length =
        cfg_.encoding == genome::Encoding::restricted ? ctx_->orbits.count() : std::size_t{1} << cfg_.n;
    return genome::random_bitstring(cfg_.encoding, length, rng_);
}

void Engine::decode_into(const genome::Genotype& g, std::span<std::uint8_t> out) const
{
    if (const auto* bits = std::get_if<genome::BitstringGenome>(&g)) {
        if (bits->encoding == genome::Encoding::restricted) {
            genome::expand_restricted_into(bits->bits, ctx_->orbits, out);
        } else {
            std::copy(bits->bits.begin(), bits->bits.end(), out.begin());
        }
        return;
    }
    genome::eval_tree_into(std::get<genome::TreeGenome>(g), cfg_.n, out);
    if (cfg_.encoding == genome::Encoding::restricted) {
        genome::repair_in_place(out, ctx_->orbits);
    }
}

TruthTable Engine::decode(const genome::Genotype& g) const
{
    TruthTable tt(cfg_.n);
    decode_into(g, tt.bits());
    return tt;
}

fitness::FitnessValue Engine::evaluate(const genome::Genotype& g)
{
    decode_into(g, scratch_);
    const auto value = evaluator_(scratch_);
    ++evaluations_;
    if (!has_best_ || value > best_.fitness) {
        best_ = {g, value, evaluations_};
        has_best_ = true;
        trajectory_.push_back({evaluations_, value.scalar});
    }
    return value;
}

void Engine::initialize()
{
    population_.clear();
    population_.reserve(cfg_.population_size);
    for (std::size_t i = 0; i < cfg_.population_size && !exhausted(); ++i) {
        auto g = random_genome(i);
        const auto f = evaluate(g);
        population_.push_back({std::move(g), f, evaluations_});
    }
}

void Engine::step()
{
    const std::size_t size = population_.size();
    std::array<std::size_t, 3> picks{};
    picks[0] = rng_.index(size);
    do {
        picks[1] = rng_.index(size);
    } while (picks[1] == picks[0]);
    do {
        picks[2] = rng_.index(size);
    } while (picks[2] == picks[0] || picks[2] == picks[1]);

    const auto worst_value = std::min({population_[picks[0]].fitness, population_[picks[1]].fitness,
                                       population_[picks[2]].fitness});
    std::array<std::size_t, 3> tied{};
    std::size_t tied_count = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        if (population_[picks[k]].fitness == worst_value) {
            tied[tied_count++] = k;
        }
    }
    const std::size_t eliminated = tied[rng_.index(tied_count)];
    const std::size_t first = picks[(eliminated + 1) % 3];
    const std::size_t second = picks[(eliminated + 2) % 3];

    auto child = genome::crossover(population_[first].genome, population_[second].genome, cfg_.tree_limits, rng_);
    if (rng_.chance(cfg_.p_mut)) {
        genome::mutate(child, cfg_.n, cfg_.tree_limits, rng_);
    }
    const auto f = evaluate(child);
    population_[picks[eliminated]] = {std::move(child), f, evaluations_};
}

Individual Engine::local_search(Individual ind, int trials)
{
    int failures = 0;
    while (failures < trials && !exhausted()) {
        auto candidate = ind.genome;
        genome::mutate(candidate, cfg_.n, cfg_.tree_limits, rng_);
        const auto f = evaluate(candidate);
        if (f > ind.fitness) {
            ind = {std::move(candidate), f, evaluations_};
            failures = 0;
        } else {
            ++failures;
        }
    }
    return ind;
}

void Engine::local_search_pass()
{
    const std::size_t size = population_.size();
    const auto extra = static_cast<std::size_t>(std::ceil(cfg_.ls_fraction * static_cast<double>(size)));

    std::vector<std::size_t> targets;
    const auto best_it = std::max_element(population_.begin(), population_.end(),
                                          [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    targets.push_back(static_cast<std::size_t>(best_it - population_.begin()));
    const std::size_t wanted = std::min(size, 1 + extra);
    while (targets.size() < wanted) {
        const std::size_t pick = rng_.index(size);
        if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
            targets.push_back(pick);
        }
    }
    for (std::size_t idx : targets) {
        if (exhausted()) {
            break;
        }
        population_[idx] = local_search(population_[idx], cfg_.ls_trials);
    }
}

RunResult Engine::run()
{
    const auto start = std::chrono::steady_clock::now();
    initialize();
    std::size_t steps = 0;
    while (!exhausted()) {
        step();
        ++steps;
        if (cfg_.local_search && steps % population_.size() == 0) {
            local_search_pass();
        }
    }
    RunResult result;
    result.config = cfg_;
    result.trajectory = trajectory_;
    result.best = best_;
    result.best_tt = decode(best_.genome);
    result.evaluations = evaluations_;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunResult run(const EAConfig& cfg, const FieldContext& ctx)
{
    Engine engine(cfg, ctx);
    return engine.run();
}

RunResult run(const EAConfig& cfg)
{
    validate(cfg);
    const auto ctx = FieldContext::for_degree(cfg.n);
    return run(cfg, ctx);
}

}  // namespace idem::ea
