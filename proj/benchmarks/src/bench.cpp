#include <benchmark/benchmark.h>

#include "rmtcum/expansion.hpp"
#include "rmtcum/multigraph.hpp"
#include "rmtcum/partition.hpp"
#include "rmtcum/sampler.hpp"
#include "rmtcum/spi.hpp"
#include "rmtcum/word_graphs.hpp"

namespace {

using namespace rmtcum;

void BM_EnumeratePartitions(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        long count = 0;
        enumerate_partitions(n, [&](const SetPartition&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumeratePartitions)->Arg(8)->Arg(10)->Arg(12);

void BM_EnumeratePairings(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        long count = 0;
        enumerate_pairings(GroundSet::range(n), [&](const SetPartition&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumeratePairings)->Arg(10)->Arg(12);

void BM_Bridges(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    WordGraphs wg = build_word_graphs({m});
    std::vector<Mark> eps(m, Mark::plain);
    std::vector<MultiGraph> quotients;
    enumerate_pairings(GroundSet::range(m), [&](const SetPartition& tau) {
        quotients.push_back(quotient(wg.D, lift_pairing(tau)));
    });
    for (auto _ : state) {
        HalfInteger total;
        for (const MultiGraph& g : quotients) total += t_exponent(g);
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(quotients.size()));
}
BENCHMARK(BM_Bridges)->Arg(8)->Arg(10);

void BM_SpiContraction(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    DeterministicSet detset(n);
    detset.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
    std::vector<std::string> names(6, "b");
    CyclicPartition gamma({6});
    DeterministicSum sum(detset, names, gamma, {});
    GroundSet dom = GroundSet::signed_range(6);
    SetPartition pi = SetPartition::singletons(dom);
    for (auto _ : state) {
        // cached after the first call; measure cache-hit path plus one cold run
        DeterministicSum cold(detset, names, gamma, {});
        benchmark::DoNotOptimize(cold.s_geq(pi));
    }
}
BENCHMARK(BM_SpiContraction)->Arg(16)->Arg(32);

void BM_SamplerThroughput(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::uint64_t sub = 0;
    for (auto _ : state) {
        Matrix x = sample_ensemble(n, EnsembleTag::gue, EntryDistribution{}, 42, sub++);
        benchmark::DoNotOptimize(x);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SamplerThroughput)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
