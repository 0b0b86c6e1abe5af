#include <benchmark/benchmark.h>

#include "qtel/canonical.hpp"
#include "qtel/figures.hpp"
#include "qtel/simulator.hpp"
#include "qtel/state.hpp"

using namespace qtel;

namespace {

void BM_HsDecompose(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(1);
  for (auto _ : state) benchmark::DoNotOptimize(hs_decompose(rho));
}
BENCHMARK(BM_HsDecompose);

void BM_Canonicalize(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(2);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(rho));
}
BENCHMARK(BM_Canonicalize);

void BM_Classify(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(3);
  for (auto _ : state) benchmark::DoNotOptimize(classify(rho));
}
BENCHMARK(BM_Classify);

void BM_TeleportFidelityExact(benchmark::State& state) {
  const CanonicalForm cf = canonicalize(random_density_matrix(4));
  Rng rng(5);
  const Vec3r a = sample_bloch_uniform(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(teleport_fidelity_exact(cf.varrho, a));
}
BENCHMARK(BM_TeleportFidelityExact);

void BM_MonteCarlo(benchmark::State& state) {
  const CanonicalForm cf = canonicalize(random_density_matrix(6));
  const std::int64_t n = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_stats(cf.varrho, n, 7));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Arg(100000);

void BM_HaarSu2(benchmark::State& state) {
  Rng rng(8);
  for (auto _ : state) benchmark::DoNotOptimize(haar_su2(rng));
}
BENCHMARK(BM_HaarSu2);

void BM_BilateralTwirl(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(9);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bilateral_twirl(rho, n, 10));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BilateralTwirl)->Arg(1000);

void BM_FefOracle(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(11);
  const int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fef_oracle(rho, restarts, 12));
}
BENCHMARK(BM_FefOracle)->Arg(10)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
