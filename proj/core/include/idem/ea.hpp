#pragma once

#include "idem/fitness.hpp"
#include "idem/frobenius.hpp"
#include "idem/genome.hpp"
#include "idem/random.hpp"
#include "idem/truth_table.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace idem::ea {

enum class Representation { tt, gp };

struct EAConfig {
    int n = 8;
    Representation representation = Representation::tt;
    genome::Encoding encoding = genome::Encoding::restricted;
    fitness::Objective objective = fitness::Objective::fit1;
    std::size_t population_size = 500;
    std::uint64_t budget = 1'000'000;
    double p_mut = 0.5;
    bool local_search = false;
    int ls_trials = 25;
    double ls_fraction = 0.01;
    std::uint64_t seed = 1;
    genome::TreeLimits tree_limits;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const EAConfig& cfg);

/// Immutable per-dimension structures shared by every run at that n.
struct FieldContext {
    gf2n::PolySpec poly;
    frobenius::SquareMap square_map;
    frobenius::OrbitPartition orbits;

    static FieldContext for_degree(int n);
};

struct Individual {
    genome::Genotype genome;
    fitness::FitnessValue fitness;
    std::uint64_t eval_index = 0;
};

struct TrajectoryPoint {
    std::uint64_t eval_index = 0;
    double scalar = 0.0;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct RunResult {
    EAConfig config;
    std::vector<TrajectoryPoint> trajectory;  // one point per best-ever improvement
    Individual best;
    TruthTable best_tt;
    std::uint64_t evaluations = 0;
    double seconds = 0.0;
};

/// Steady-state EA with 3-tournament elimination. Every fitness evaluation,
/// including those made by local search, is charged to the budget; nothing is
/// evaluated once the budget is spent.
class Engine {
public:
    Engine(const EAConfig& cfg, const FieldContext& ctx);

    /// Draws and evaluates the initial population (stops early if the budget is smaller).
    void initialize();

    /// One tournament: eliminate the worst of three distinct individuals and
    /// replace it by the (possibly mutated) offspring of the other two.
    void step();

    /// Mutation-based local search from `ind`: restarts after every strict
    /// improvement and stops after `trials` consecutive failures.
    Individual local_search(Individual ind, int trials);

    /// Local search on the population best plus ceil(ls_fraction * size) random members.
    void local_search_pass();

    /// Runs initialization and steps (with local search after every
    /// population_size steps, if enabled) until the budget is spent.
    RunResult run();

    bool exhausted() const noexcept { return evaluations_ >= cfg_.budget; }
    std::uint64_t evaluations() const noexcept { return evaluations_; }
    std::span<const Individual> population() const noexcept { return population_; }
    const Individual& best() const noexcept { return best_; }
    std::span<const TrajectoryPoint> trajectory() const noexcept { return trajectory_; }

    /// Truth table seen by the objective: restricted bitstrings are expanded,
    /// restricted trees are evaluated and then repaired.
    TruthTable decode(const genome::Genotype& g) const;

    fitness::FitnessValue evaluate(const genome::Genotype& g);

    genome::Genotype random_genome(std::size_t slot);

private:
    void decode_into(const genome::Genotype& g, std::span<std::uint8_t> out) const;

    EAConfig cfg_;
    const FieldContext* ctx_;
    Rng rng_;
    fitness::Evaluator evaluator_;
    std::vector<std::uint8_t> scratch_;
    std::vector<Individual> population_;
    Individual best_;
    bool has_best_ = false;
    std::vector<TrajectoryPoint> trajectory_;
    std::uint64_t evaluations_ = 0;
};

RunResult run(const EAConfig& cfg, const FieldContext& ctx);
RunResult run(const EAConfig& cfg);

}  // namespace idem::ea
