#include <benchmark/benchmark.h>

#include <random>

#include "catmorph/categorical.hpp"
#include "catmorph/protected.hpp"

namespace {

using namespace catmorph;

// Blocky one-hot image: theta-heavy erosion input.
CategoricalImage blocks(std::size_t side, std::size_t channels) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, channels - 1);
  CategoricalImage f(Shape{side, side}, channels);
  std::vector<std::size_t> block((side / 8 + 1) * (side / 8 + 1));
  for (auto& b : block) b = pick(rng);
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x)
      f.at(y * side + x, block[(y / 8) * (side / 8 + 1) + x / 8]) = 1.0;
  return f;
}

void BM_CategoricalErode(benchmark::State& state) {
  const CategoricalImage f = blocks(128, 4);
  const auto se = StructuringElement::ball(static_cast<double>(state.range(0)), Norm::euclidean);
  for (auto _ : state) benchmark::DoNotOptimize(categorical::erode(f, CategoryIndex(0), se));
}

void BM_CategoricalDilate(benchmark::State& state) {
  const CategoricalImage f = blocks(128, 4);
  const auto se = StructuringElement::ball(static_cast<double>(state.range(0)), Norm::euclidean);
  for (auto _ : state) benchmark::DoNotOptimize(categorical::dilate(f, CategoryIndex(0), se));
}

void BM_ProtectedDilate(benchmark::State& state, protect::Mode mode) {
  const CategoricalImage f = blocks(64, 4);
  const auto se = StructuringElement::ball(static_cast<double>(state.range(0)), Norm::euclidean);
  protect::ProtectionSpec spec;
  spec.protected_channels = {1};
  spec.mode = mode;
  for (auto _ : state) benchmark::DoNotOptimize(protect::dilate(f, CategoryIndex(0), se, spec));
}

}  // namespace

BENCHMARK(BM_CategoricalErode)->Arg(1)->Arg(3);
BENCHMARK(BM_CategoricalDilate)->Arg(1)->Arg(3);
BENCHMARK_CAPTURE(BM_ProtectedDilate, literal, protect::Mode::literal)->Arg(2);
BENCHMARK_CAPTURE(BM_ProtectedDilate, capacity, protect::Mode::capacity)->Arg(2);
