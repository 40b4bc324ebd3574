#include "idem/boolfn.hpp"
#include "idem/ea.hpp"
#include "idem/fitness.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace idem;

namespace {

TruthTable random_table(int n, Rng& rng)
{
    TruthTable tt(n);
    for (std::size_t x = 0; x < tt.size(); ++x) {
        tt.set(x, rng.coin());
    }
    return tt;
}

void BM_WalshTransform(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const auto tt = random_table(n, rng);
    std::vector<std::int32_t> out(tt.size());
    for (auto _ : state) {
        boolfn::walsh_transform_into(tt.bits(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalshTransform)->DenseRange(6, 16, 2);

void BM_Fitness(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto obj = state.range(1) == 1 ? fitness::Objective::fit1 : fitness::Objective::fit2;
    const auto ctx = ea::FieldContext::for_degree(n);
    fitness::Evaluator eval(ctx.square_map, obj);
    Rng rng(2);
    const auto tt = random_table(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(tt));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Fitness)->ArgsProduct({{8, 10, 12}, {1, 2}});

void BM_EngineStep(benchmark::State& state)
{
    ea::EAConfig cfg;
    cfg.n = static_cast<int>(state.range(0));
    cfg.representation = state.range(1) == 0 ? ea::Representation::tt : ea::Representation::gp;
    cfg.budget = ~std::uint64_t{0} >> 1;
    const auto ctx = ea::FieldContext::for_degree(cfg.n);
    ea::Engine engine(cfg, ctx);
    engine.initialize();
    for (auto _ : state) {
        engine.step();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStep)->ArgsProduct({{8, 10}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
