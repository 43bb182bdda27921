#include <benchmark/benchmark.h>

#include <random>

#include "catmorph/geodesic.hpp"

namespace {

using namespace catmorph;
using namespace catmorph::geodesic;

DomainMask holes(std::size_t side) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution wall(0.15);
  DomainMask m(Shape{side, side});
  for (std::size_t p = 0; p < m.size(); ++p) m.set(p, !wall(rng));
  m.set(0, true);
  return m;
}

void BM_Dijkstra(benchmark::State& state) {
  const DomainMask m = holes(static_cast<std::size_t>(state.range(0)));
  const std::size_t seed[] = {0};
  for (auto _ : state) benchmark::DoNotOptimize(dijkstra_distance(seed, m));
}

void BM_FastMarching(benchmark::State& state) {
  const DomainMask m = holes(static_cast<std::size_t>(state.range(0)));
  const std::size_t seed[] = {0};
  for (auto _ : state) benchmark::DoNotOptimize(fmm_distance(seed, m));
}

void BM_BallQuery(benchmark::State& state, Solver solver) {
  const DomainMask m = holes(128);
  BallSearch search(m, solver, Metric::octagonal);
  std::size_t x = 0;
  for (auto _ : state) {
    x = (x + 7919) % m.size();
    benchmark::DoNotOptimize(search.query(x, static_cast<double>(state.range(0))));
  }
}

}  // namespace

BENCHMARK(BM_Dijkstra)->Arg(64)->Arg(256);
BENCHMARK(BM_FastMarching)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_BallQuery, graph, Solver::graph)->Arg(3)->Arg(8);
BENCHMARK_CAPTURE(BM_BallQuery, fmm, Solver::fmm)->Arg(3)->Arg(8);
