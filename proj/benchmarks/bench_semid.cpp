#include <benchmark/benchmark.h>

#include "semid/criteria.hpp"
#include "semid/digraph.hpp"
#include "semid/jacobian.hpp"
#include "semid/matroid.hpp"

using namespace semid;

namespace {

Digraph same_outdeg_g1() { return Digraph(6, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {5, 3}, {6, 2}}); }
Digraph same_outdeg_g2() { return Digraph(6, {{1, 5}, {1, 6}, {1, 4}, {2, 5}, {3, 6}, {5, 3}, {6, 2}}); }

Digraph flip(bool forward) {
  std::vector<Edge> edges{{1, 2}, {2, 3}, {3, 1}};
  for (Node v = 1; v <= 3; ++v) {
    edges.push_back({v, 4});
    edges.push_back({v, 5});
  }
  edges.push_back(forward ? Edge{4, 5} : Edge{5, 4});
  return Digraph(5, edges);
}

void BM_BuildJacobian(benchmark::State& state) {
  const Digraph g = Digraph::complete_oriented(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_jacobian(g));
}
BENCHMARK(BM_BuildJacobian)->DenseRange(3, 6);

void BM_JacobianMod(benchmark::State& state) {
  const Digraph g = Digraph::complete_oriented(static_cast<int>(state.range(0)));
  const PrimeField f;
  const RankOracleConfig cfg;
  const auto point = trial_point(g, cfg, 0);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_mod(g, f, point));
}
BENCHMARK(BM_JacobianMod)->DenseRange(3, 6);

void BM_MatroidRank(benchmark::State& state) {
  const Digraph g = same_outdeg_g1();
  const RankOracleConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(matroid_rank(g, cfg));
}
BENCHMARK(BM_MatroidRank);

void BM_ExactRank(benchmark::State& state) {
  const Jacobian j = build_jacobian(Digraph(4, {{1, 2}, {2, 4}, {1, 3}, {3, 4}}));
  const ColumnSet all(column_layout(4));
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(j, all));
}
BENCHMARK(BM_ExactRank);

void BM_MatroidBases(benchmark::State& state) {
  const Digraph g = state.range(0) == 4 ? Digraph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 2}}) : flip(true);
  const RankOracleConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(JacobianMatroid::compute(g, cfg));
}
BENCHMARK(BM_MatroidBases)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_MatroidsEqualFlipPair(benchmark::State& state) {
  const Digraph a = flip(true);
  const Digraph b = flip(false);
  const RankOracleConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(matroids_equal(a, b, cfg));
}
BENCHMARK(BM_MatroidsEqualFlipPair)->Unit(benchmark::kMillisecond);

void BM_PcCriterion(benchmark::State& state) {
  const Digraph a = same_outdeg_g1();
  const Digraph b = same_outdeg_g2();
  for (auto _ : state) benchmark::DoNotOptimize(pc_criterion(a, b));
}
BENCHMARK(BM_PcCriterion);

void BM_RunCriteria(benchmark::State& state) {
  const Digraph a = same_outdeg_g1();
  const Digraph b = same_outdeg_g2();
  for (auto _ : state) benchmark::DoNotOptimize(run_criteria(a, b));
}
BENCHMARK(BM_RunCriteria);

void BM_DecodeGraphIndex(benchmark::State& state) {
  std::uint64_t i = 0;
  const std::uint64_t count = simple_digraph_count(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(digraph_from_index(6, i));
    i = (i + 7919) % count;
  }
}
BENCHMARK(BM_DecodeGraphIndex);

}  // namespace

BENCHMARK_MAIN();
