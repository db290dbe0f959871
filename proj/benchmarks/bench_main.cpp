// Timings of the main engine entry points on the standard small modules.

#include <benchmark/benchmark.h>

#include "extalg/ar.hpp"
#include "support/fixtures.hpp"

using namespace extalg;
using namespace extalg::testing;

namespace {

void BM_Rank(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(st.range(0));
  Matrix a = random_matrix(n, n, kDefaultPrime, rng);
  for (auto _ : st) benchmark::DoNotOptimize(rank(a));
  st.SetComplexityN(n);
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_ResolveSimple(benchmark::State& st) {
  const int r = static_cast<int>(st.range(0));
  GradedModule k = K(r);
  for (auto _ : st) benchmark::DoNotOptimize(min_resolution(k, 8).total(8));
}
BENCHMARK(BM_ResolveSimple)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_HomSpace(benchmark::State& st) {
  const int s = static_cast<int>(st.range(0));
  GradedModule a = omega_K(2, s), b = omega_K(2, s);
  for (auto _ : st) benchmark::DoNotOptimize(hom_space(a, b, 0).size());
}
BENCHMARK(BM_HomSpace)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_IsKoszul(benchmark::State& st) {
  GradedModule m = omega_K(2, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(is_koszul(m).holds);
}
BENCHMARK(BM_IsKoszul)->DenseRange(0, 4, 2)->Unit(benchmark::kMillisecond);

void BM_CohomologyTableO(benchmark::State& st) {
  GradedModule k = K(2);
  for (auto _ : st) benchmark::DoNotOptimize(cohomology_table(k, -6, 6).at(0, 6));
}
BENCHMARK(BM_CohomologyTableO)->Unit(benchmark::kMillisecond);

void BM_LocallyFree(benchmark::State& st) {
  GradedModule m = st.range(0) ? linear_quotient(2, 1) : J1(2);
  for (auto _ : st) benchmark::DoNotOptimize(is_locally_free(m).status);
}
BENCHMARK(BM_LocallyFree)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ARSequence(benchmark::State& st) {
  GradedModule m = st.range(0) ? J1(2) : K(2);
  for (auto _ : st) benchmark::DoNotOptimize(ar_sequence(m).certified());
}
BENCHMARK(BM_ARSequence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
