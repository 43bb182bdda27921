#include <benchmark/benchmark.h>

#include <random>

#include "catmorph/grayscale.hpp"

namespace {

using namespace catmorph;

ScalarField random_field(std::size_t side) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScalarField f(Shape{side, side});
  for (auto& v : f.values()) v = u(rng);
  return f;
}

void BM_DilateChessboard(benchmark::State& state, gray::Engine engine) {
  const ScalarField f = random_field(256);
  const auto se = StructuringElement::ball(static_cast<double>(state.range(0)), Norm::chessboard);
  for (auto _ : state) benchmark::DoNotOptimize(gray::dilate(f, se, engine));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size()));
}

void BM_DilateEuclidean(benchmark::State& state) {
  const ScalarField f = random_field(256);
  const auto se = StructuringElement::ball(static_cast<double>(state.range(0)), Norm::euclidean);
  for (auto _ : state) benchmark::DoNotOptimize(gray::dilate(f, se));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_DilateChessboard, naive, gray::Engine::naive)->Arg(1)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(BM_DilateChessboard, van_herk, gray::Engine::automatic)->Arg(1)->Arg(4)->Arg(8);
BENCHMARK(BM_DilateEuclidean)->Arg(1)->Arg(4);
