#include "idem/boolfn.hpp"
#include "idem/ea.hpp"

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <stdexcept>

using namespace idem;
using namespace idem::ea;

namespace {

EAConfig small_config(int n, std::uint64_t seed)
{
    EAConfig cfg;
    cfg.n = n;
    cfg.population_size = 50;
    cfg.budget = 5000;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("configuration validation")
{
    EAConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    auto bad = cfg;
    bad.population_size = 2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.budget = 10;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.p_mut = 1.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.n = 17;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.local_search = true;
    bad.ls_trials = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("budget equal to population size evaluates only the initial population")
{
    auto cfg = small_config(6, 3);
    cfg.budget = cfg.population_size;
    const auto ctx = FieldContext::for_degree(6);
    Engine engine(cfg, ctx);
    const auto result = engine.run();
    CHECK(result.evaluations == cfg.population_size);
    const auto pop = engine.population();
    const auto best = std::max_element(pop.begin(), pop.end(),
                                       [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
    CHECK(result.best.fitness == best->fitness);
}

TEST_CASE("steady-state accounting and monotone trajectory")
{
    const auto ctx = FieldContext::for_degree(7);
    for (auto repr : {Representation::tt, Representation::gp}) {
        for (auto enc : {genome::Encoding::unrestricted, genome::Encoding::restricted}) {
            auto cfg = small_config(7, 5);
            cfg.representation = repr;
            cfg.encoding = enc;
            Engine engine(cfg, ctx);
            engine.initialize();
            REQUIRE(engine.evaluations() == cfg.population_size);
            for (std::size_t k = 1; k <= 300; ++k) {
                engine.step();
                REQUIRE(engine.evaluations() == cfg.population_size + k);
            }
            const auto traj = engine.trajectory();
            REQUIRE_FALSE(traj.empty());
            for (std::size_t i = 1; i < traj.size(); ++i) {
                REQUIRE(traj[i].scalar > traj[i - 1].scalar);
                REQUIRE(traj[i].eval_index > traj[i - 1].eval_index);
            }
            CHECK(engine.best().fitness.scalar == traj.back().scalar);
            for (const auto& ind : engine.population()) {
                REQUIRE(ind.fitness <= engine.best().fitness);
            }
        }
    }
}

TEST_CASE("crossover of identical parents reproduces them")
{
    const auto ctx = FieldContext::for_degree(6);
    Engine engine(small_config(6, 9), ctx);
    Rng rng(9);
    for (std::size_t slot = 0; slot < 20; ++slot) {
        const auto g = engine.random_genome(slot);
        for (int k = 0; k < 20; ++k) {
            const auto child = genome::crossover(g, g, {}, rng);
            REQUIRE(std::get<genome::BitstringGenome>(child) == std::get<genome::BitstringGenome>(g));
        }
    }
}

TEST_CASE("runs are reproducible")
{
    const auto ctx = FieldContext::for_degree(6);
    for (auto repr : {Representation::tt, Representation::gp}) {
        auto cfg = small_config(6, 42);
        cfg.representation = repr;
        cfg.local_search = true;
        const auto a = run(cfg, ctx);
        const auto b = run(cfg, ctx);
        CHECK(a.trajectory == b.trajectory);
        CHECK(genome::to_string(a.best.genome) == genome::to_string(b.best.genome));
        CHECK(a.best_tt == b.best_tt);
        CHECK(a.evaluations == b.evaluations);
        cfg.seed = 43;
        const auto c = run(cfg, ctx);
        CHECK_FALSE((c.trajectory == a.trajectory && c.best_tt == a.best_tt));
    }
}

TEST_CASE("budget is exact with local search")
{
    const auto ctx = FieldContext::for_degree(6);
    for (std::uint64_t budget : {50u, 51u, 1234u, 4999u}) {
        for (auto repr : {Representation::tt, Representation::gp}) {
            auto cfg = small_config(6, 7);
            cfg.budget = budget;
            cfg.local_search = true;
            cfg.representation = repr;
            CHECK(run(cfg, ctx).evaluations == budget);
        }
    }
}

TEST_CASE("restricted encodings never leave the feasible set")
{
    const auto ctx = FieldContext::for_degree(8);
    for (auto repr : {Representation::tt, Representation::gp}) {
        auto cfg = small_config(8, 11);
        cfg.representation = repr;
        cfg.local_search = true;
        Engine engine(cfg, ctx);
        const auto result = engine.run();
        for (const auto& point : result.trajectory) {
            REQUIRE(point.scalar >= 0.0);
        }
        for (const auto& ind : engine.population()) {
            REQUIRE(ind.fitness.pen == 0);
            REQUIRE(boolfn::penalty(engine.decode(ind.genome), ctx.square_map) == 0);
        }
        CHECK(result.best.fitness.nl <= boolfn::covering_bound(8));
        CHECK(frobenius::is_idempotent(result.best_tt, ctx.square_map));
    }
}

TEST_CASE("local search")
{
    const auto ctx = FieldContext::for_degree(4);
    auto cfg = small_config(4, 13);
    Engine engine(cfg, ctx);

    // A restricted genome at the covering bound (nl 6) cannot be strictly
    // improved under fit1, so local search spends exactly `trials` evaluations.
    std::optional<Individual> optimum;
    for (std::uint32_t mask = 0; mask < 64 && !optimum; ++mask) {
        genome::BitstringGenome g{genome::Encoding::restricted, {}};
        for (int k = 0; k < 6; ++k) {
            g.bits.push_back(static_cast<std::uint8_t>(mask >> k & 1u));
        }
        const auto f = engine.evaluate(g);
        if (f.nl == boolfn::covering_bound(4)) {
            optimum = Individual{g, f, engine.evaluations()};
        }
    }
    REQUIRE(optimum);
    const auto before = engine.evaluations();
    const auto after = engine.local_search(*optimum, 25);
    CHECK(engine.evaluations() - before == 25);
    CHECK(genome::to_string(after.genome) == genome::to_string(optimum->genome));

    const auto start = Individual{genome::BitstringGenome{genome::Encoding::restricted, std::vector<std::uint8_t>(6)},
                                  engine.evaluate(genome::BitstringGenome{genome::Encoding::restricted,
                                                                         std::vector<std::uint8_t>(6)}),
                                  0};
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(engine.local_search(start, 5).fitness >= start.fitness);
    }
}

TEST_CASE("restricted truth-table search finds the n = 6 optimum")
{
    EAConfig cfg;
    cfg.n = 6;
    cfg.seed = 1;
    const auto result = run(cfg);
    CHECK(result.best.fitness.scalar == 28.0);
    CHECK(result.evaluations == 1'000'000);
}
