// Serial reference kernels against their OpenMP versions. The omp cases
// take the thread count as the benchmark argument.

#include <benchmark/benchmark.h>

#include "slopelab/kernels.hpp"

using namespace slopelab;

namespace {

const FiniteField& field_23() {
  static const FiniteField f(23, 2);
  return f;
}

const std::vector<std::vector<long>>& rank4_tuples() {
  static const auto t = kernels::distinct_slope_tuples(4, {-2, -1, 0, 1, 2});
  return t;
}

// Default grid for p = 31 plus the rank-2 boundary points of deeper disks.
const std::vector<LegendrePoint>& big_grid() {
  static const auto g = [] {
    const long p = 31;
    auto grid = default_grid(p);
    for (long c = 2; c < 4000; ++c)
      grid.push_back({AdicDiskPoint::rank_two(p, Rational(c), Rational(c % 5 + 1), AdicDiskPoint::Perturbation::Plus), c % 3 == 0});
    return grid;
  }();
  return g;
}

const SupersingularSet& ss_31() {
  static const auto s = supersingular_lambdas(31);
  return s;
}

void BM_traces_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::frobenius_traces(field_23()));
}
void BM_traces_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::frobenius_traces(field_23(), static_cast<int>(st.range(0))));
}

void BM_supersingular_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::supersingular_by_count(field_23()));
}
void BM_supersingular_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::supersingular_by_count(field_23(), static_cast<int>(st.range(0))));
}

void BM_hn_sweep_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::hn_dominance_sweep(rank4_tuples(), 5));
}
void BM_hn_sweep_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::hn_dominance_sweep(rank4_tuples(), 5, static_cast<int>(st.range(0))));
}

void BM_legendre_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::classify_all(big_grid(), ss_31()));
}
void BM_legendre_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::classify_all(big_grid(), ss_31(), static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_traces_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_traces_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_supersingular_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_supersingular_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hn_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hn_sweep_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_legendre_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_legendre_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
