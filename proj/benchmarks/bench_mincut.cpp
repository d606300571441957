#include <benchmark/benchmark.h>

#include "mincut/congest/dist_mincut.hpp"
#include "mincut/congest/dist_mst.hpp"
#include "mincut/congest/one_respect.hpp"
#include "mincut/generators.hpp"
#include "mincut/oracle.hpp"
#include "mincut/random.hpp"
#include "mincut/seq_mincut.hpp"
#include "mincut/tree_packing.hpp"

using namespace mincut;
using namespace mincut::congest;

namespace {

std::vector<std::int64_t> random_weights(const Graph& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::int64_t> w(g.m());
  for (auto& x : w) x = static_cast<std::int64_t>(uniform_below(rng, 1000));
  return w;
}

void BM_DistMst(benchmark::State& state) {
  const Graph g = random_regular(static_cast<NodeId>(state.range(0)), 3, 1);
  const Network net(g);
  const auto w = random_weights(g, 2);
  long rounds = 0;
  for (auto _ : state) {
    const DistTree t = dist_mst(net, w, {});
    rounds = t.report.rounds;
    benchmark::DoNotOptimize(t.edges.data());
  }
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_DistMst)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_OneRespect(benchmark::State& state) {
  const Graph g = random_regular(static_cast<NodeId>(state.range(0)), 3, 1);
  const Network net(g);
  const DistTree t = dist_mst(net, random_weights(g, 2), {});
  const BfsTree bfs = bfs_tree(net, 0, {});
  long rounds = 0;
  for (auto _ : state) {
    const OneRespectResult r = one_respect_min_cut(net, t, bfs, {});
    rounds = r.report.rounds;
    benchmark::DoNotOptimize(r.c_star);
  }
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_OneRespect)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_SequentialProfile(benchmark::State& state) {
  const Graph g = random_regular(static_cast<NodeId>(state.range(0)), 3, 1);
  const RootedTree t = random_spanning_tree(g, 3);
  for (auto _ : state) benchmark::DoNotOptimize(one_respect_profile(g, t).cut.data());
}
BENCHMARK(BM_SequentialProfile)->RangeMultiplier(4)->Range(64, 1024);

void BM_GreedyPack(benchmark::State& state) {
  const Graph g = planted_cut(8, 8, 2, 0.9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_pack(g, state.range(0)).size);
}
BENCHMARK(BM_GreedyPack)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SeqApprox(benchmark::State& state) {
  const Graph g = planted_cut(static_cast<NodeId>(state.range(0)) / 2, static_cast<NodeId>(state.range(0)) / 2, 2,
                              0.9, 5);
  for (auto _ : state) benchmark::DoNotOptimize(approx_min_cut(g, Rational(1), 0).cut.weight);
}
BENCHMARK(BM_SeqApprox)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DistApprox(benchmark::State& state) {
  const Graph g = planted_cut(static_cast<NodeId>(state.range(0)) / 2, static_cast<NodeId>(state.range(0)) / 2, 2,
                              0.9, 5);
  long rounds = 0;
  for (auto _ : state) {
    const DistApproxResult r = dist_approx_min_cut(g, Rational(1), 0);
    rounds = r.report.rounds;
    benchmark::DoNotOptimize(r.approx.cut.weight);
  }
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_DistApprox)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StoerWagner(benchmark::State& state) {
  const Graph g = weighted_random(static_cast<NodeId>(state.range(0)), 0.3, 5, 6);
  for (auto _ : state) benchmark::DoNotOptimize(stoer_wagner(g).weight);
}
BENCHMARK(BM_StoerWagner)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
