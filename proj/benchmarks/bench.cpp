// Microbenchmarks for the evaluation paths. Points are encoded as hundredths
// so the benchmark names stay readable (Arg(3) = x of 0.03, and so on). Small
// arguments are the expensive regime for the fast path (long recurrence
// shift); large digit counts are the expensive regime for the oracle.
#include <benchmark/benchmark.h>

#include "polyadd/oracle.hpp"
#include "polyadd/polygamma.hpp"
#include "polyadd/threshold.hpp"
#include "polyadd/verify.hpp"

namespace {

void BM_digamma(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::digamma(x));
}
BENCHMARK(BM_digamma)->Arg(3)->Arg(170)->Arg(2500);

void BM_polygamma(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const double x = static_cast<double>(state.range(1)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::polygamma(k, x));
}
BENCHMARK(BM_polygamma)
    ->Args({1, 3})
    ->Args({1, 170})
    ->Args({6, 170})
    ->Args({12, 2500});

void BM_polygamma_exp(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::polygamma_exp(2, t));
}
BENCHMARK(BM_polygamma_exp)->Arg(-200)->Arg(300);

void BM_oracle_polygamma(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int digits = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::oracle_polygamma(k, 0.37, digits));
}
BENCHMARK(BM_oracle_polygamma)->Args({1, 25})->Args({1, 40})->Args({8, 30});

void BM_gap(benchmark::State& state) {
  const int i = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::gap(i, 0.75));
}
BENCHMARK(BM_gap)->Arg(1)->Arg(8);

void BM_solve_theta(benchmark::State& state) {
  const int i = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::solve_theta(i, 1e-12));
}
BENCHMARK(BM_solve_theta)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_deficit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(polyadd::deficit(1, 2.0, 0.5));
}
BENCHMARK(BM_deficit);

}  // namespace

BENCHMARK_MAIN();
