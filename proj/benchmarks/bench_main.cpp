#include <benchmark/benchmark.h>

#include "hofib/borel.hpp"
#include "hofib/constructions.hpp"
#include "hofib/fibration.hpp"
#include "hofib/homology.hpp"
#include "hofib/subdivision.hpp"

namespace {

using namespace hofib;

void BM_SphereHomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SSetPtr s = boundary(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(Homology(*s).group(n).free_rank);
}
BENCHMARK(BM_SphereHomology)->DenseRange(2, 5);

void BM_Subdivide(benchmark::State& state) {
  const SSetPtr x = product(standard_simplex(2, 4), cycle_graph(static_cast<int>(state.range(0)), 4), 4).space;
  for (auto _ : state) benchmark::DoNotOptimize(sd(x).space->size());
}
BENCHMARK(BM_Subdivide)->Arg(3)->Arg(6);

void BM_WeakCheckCover(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplicialMap p = cycle_cover(cycle_graph(2 * n, 4), cycle_graph(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(weak_fibration_check(p, 3).passed);
}
BENCHMARK(BM_WeakCheckCover)->Arg(3)->Arg(12);

void BM_StarRetraction(benchmark::State& state) {
  const SubdividedMap sf =
      sd_over_simplex(product(standard_simplex(2, 4), cycle_graph(3, 4), 4).projections[0]);
  for (auto _ : state) benchmark::DoNotOptimize(star_retraction(sf, 0b001).retracts);
}
BENCHMARK(BM_StarRetraction);

void BM_ClassifyingSpace(benchmark::State& state) {
  const int top = static_cast<int>(state.range(0));
  const SimplicialCategory c = from_monoid(Monoid::cyclic(2), top);
  for (auto _ : state) benchmark::DoNotOptimize(classifying_space(c, top).space()->size());
}
BENCHMARK(BM_ClassifyingSpace)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_GroupCompletionZ2(benchmark::State& state) {
  const Diagram d = restriction_diagram(from_monoid(Monoid::cyclic(2), 4), 0);
  for (auto _ : state) benchmark::DoNotOptimize(group_completion_check(d, 4).passed());
}
BENCHMARK(BM_GroupCompletionZ2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
