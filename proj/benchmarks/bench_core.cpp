#include <benchmark/benchmark.h>

#include "kreinlab/harness.hpp"
#include "kreinlab/random.hpp"

namespace kreinlab {
namespace {

void BM_Classify(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(1);
  const KreinSpace space = random_space(rng, n, n / 2);
  const Subspace s = random_degenerate_subspace(rng, space, n / 4, n / 8);
  for (auto _ : state) benchmark::DoNotOptimize(classify(s));
}
BENCHMARK(BM_Classify)->Arg(16)->Arg(64)->Arg(256);

void BM_SelfadjointProjection(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(2);
  const KreinSpace space = random_space(rng, n, n / 2);
  const Subspace r = random_subspace(rng, space, n / 3);
  for (auto _ : state) benchmark::DoNotOptimize(selfadjoint_projection(r));
}
BENCHMARK(BM_SelfadjointProjection)->Arg(16)->Arg(64)->Arg(256);

void BM_NormalProjection(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(3);
  const KreinSpace space = random_space(rng, n, n / 2);
  const Subspace s = random_degenerate_subspace(rng, space, n / 4, n / 8);
  for (auto _ : state) benchmark::DoNotOptimize(normal_projection(s));
}
BENCHMARK(BM_NormalProjection)->Arg(16)->Arg(64)->Arg(256);

void BM_MaxSubsetNorm(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  std::vector<LowRankTerm> terms;
  for (std::size_t k = 0; k < m; ++k) terms.push_back(factor_operator(rng.gaussian(24, 1) * rng.gaussian(1, 24)));
  for (auto _ : state) benchmark::DoNotOptimize(max_subset_norm(terms, 24));
}
BENCHMARK(BM_MaxSubsetNorm)->Arg(8)->Arg(12)->Arg(15)->Arg(20);

void BM_Scenario(benchmark::State& state, const char* name) {
  Scenario s;
  s.name = name;
  s.sizes = {state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK_CAPTURE(BM_Scenario, toeplitz, "toeplitz")->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scenario, zero_angle, "zero_angle")->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scenario, blowup_family, "blowup_family")->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kreinlab

BENCHMARK_MAIN();
