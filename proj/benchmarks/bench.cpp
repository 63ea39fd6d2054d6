#include <benchmark/benchmark.h>

#include <random>

#include "gpdact/quantize.hpp"
#include "gpdact/thermal.hpp"

namespace {

const char* const kGroups[] = {"Z/2", "Z/4", "S3", "Z/8", "Q8"};

void BM_ComposeBoundaries(benchmark::State& state) {
  auto g = gpdact::named_groupoid(kGroups[state.range(0)]);
  auto l = gpdact::boundary_left(g);
  auto r = gpdact::boundary_right(g);
  for (auto _ : state) benchmark::DoNotOptimize(gpdact::compose_profunctors(r, l));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_ComposeBoundaries)->DenseRange(0, 4);

void BM_Snakes(benchmark::State& state) {
  const auto cells = gpdact::canonical_cells(gpdact::named_groupoid(kGroups[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(gpdact::check_topological_axioms(cells));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_Snakes)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_BuildLambda(benchmark::State& state) {
  const auto cs = gpdact::build_delta(gpdact::named_groupoid(kGroups[state.range(0)]), false);
  for (auto _ : state) benchmark::DoNotOptimize(gpdact::build_lambda(cs, false));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_BuildLambda)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Encrypt(benchmark::State& state) {
  const gpdact::Cipher cipher(gpdact::named_groupoid(kGroups[state.range(0)]));
  const std::size_t n = cipher.group()->morphism_count();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cipher.encrypt(i % n, (i / n) % n));
    ++i;
  }
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_Encrypt)->DenseRange(0, 2);

void BM_Teleport(benchmark::State& state) {
  auto g = gpdact::named_groupoid("Z/" + std::to_string(state.range(0)));
  std::mt19937_64 rng(1);
  const auto psi = gpdact::random_state(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(gpdact::teleportation_simulation(g, psi));
}
BENCHMARK(BM_Teleport)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
