#include <benchmark/benchmark.h>

#include "oqec/codes.hpp"
#include "oqec/conditions.hpp"
#include "oqec/random.hpp"
#include "oqec/recovery.hpp"

using namespace oqec;

namespace {

const CatalogEntry& ns_fixture() {
  static const CatalogEntry entry = *find_entry("ns_3qubit_collective");
  return entry;
}

void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Matrix rho = random_density(d * d, rng);
  const std::size_t dims[] = {d, d};
  const std::size_t keep[] = {0};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, dims, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(8)->Arg(16);

void BM_ConditionB(benchmark::State& state) {
  const auto& e = ns_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_b(e.dec, e.noise, 1e-9));
}
BENCHMARK(BM_ConditionB);

void BM_Purify(benchmark::State& state) {
  const auto& e = ns_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(purify(e.dec, e.noise));
}
BENCHMARK(BM_Purify);

void BM_ConditionD(benchmark::State& state) {
  const auto& e = ns_fixture();
  const auto ps = purify(e.dec, e.noise);
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_d(ps, 1e-9));
}
BENCHMARK(BM_ConditionD);

void BM_SchmidtRecovery(benchmark::State& state) {
  const auto& e = ns_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_schmidt_recovery(e.dec, e.noise));
}
BENCHMARK(BM_SchmidtRecovery);

void BM_UniversalRecovery(benchmark::State& state) {
  const auto& e = ns_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_universal_recovery(e.dec, e.noise));
}
BENCHMARK(BM_UniversalRecovery);

}  // namespace
BENCHMARK_MAIN();
