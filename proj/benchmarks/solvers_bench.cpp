#include <benchmark/benchmark.h>

#include "rpsp/brute_force.hpp"
#include "rpsp/flowsolve.hpp"
#include "rpsp/generate.hpp"
#include "rpsp/laminar.hpp"
#include "rpsp/relax.hpp"
#include "rpsp/treedp.hpp"

namespace {

rpsp::Instance random_instance(int n, rpsp::ObjectiveMode mode, std::uint64_t seed) {
    return rpsp::generate(rpsp::InstanceConfig{n, n, n, 0.5, seed, mode});
}

void BM_BruteForce(benchmark::State& state) {
    auto in = random_instance(static_cast<int>(state.range(0)), rpsp::ObjectiveMode::HitRewardCoverPenalty, 7);
    for (auto _ : state) benchmark::DoNotOptimize(rpsp::brute_force(in));
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

void BM_MinCut(benchmark::State& state) {
    auto in = random_instance(static_cast<int>(state.range(0)), rpsp::ObjectiveMode::CoverRewardHitPenalty, 7);
    for (auto _ : state) benchmark::DoNotOptimize(rpsp::flowsolve::solve_max(in));
}
BENCHMARK(BM_MinCut)->RangeMultiplier(4)->Range(16, 256);

void BM_Laminar(benchmark::State& state) {
    rpsp::laminar::LaminarConfig config;
    config.n = static_cast<int>(state.range(0));
    config.seed = 11;
    auto in = rpsp::laminar::generate_laminar(config);
    for (auto _ : state) benchmark::DoNotOptimize(rpsp::laminar::solve_laminar(in));
}
BENCHMARK(BM_Laminar)->RangeMultiplier(2)->Range(16, 128);

void BM_TreeDp(benchmark::State& state) {
    rpsp::treedp::TreeDpConfig config;
    config.nodes = static_cast<int>(state.range(0));
    config.k = 3;
    config.seed = 5;
    auto c = rpsp::treedp::generate_treedp_case(config);
    for (auto _ : state) benchmark::DoNotOptimize(rpsp::treedp::solve_treedp(c.instance, c.decomposition));
}
BENCHMARK(BM_TreeDp)->RangeMultiplier(2)->Range(16, 128);

void BM_LpRelaxation(benchmark::State& state) {
    auto in = random_instance(static_cast<int>(state.range(0)), rpsp::ObjectiveMode::HitRewardCoverPenalty, 3);
    auto model = rpsp::relax::build_ip(in);
    for (auto _ : state) benchmark::DoNotOptimize(rpsp::relax::solve_lp(model));
}
BENCHMARK(BM_LpRelaxation)->RangeMultiplier(2)->Range(10, 80);

}  // namespace

BENCHMARK_MAIN();
