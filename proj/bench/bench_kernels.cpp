// Serial reference implementations against the OpenMP kernels.
//
//   bench_kernels --benchmark_filter=n_star
//
// Parallel benchmarks take the thread count as their second argument.
#include <benchmark/benchmark.h>

#include "qpc/count.hpp"

namespace {

const qpc::SpfSieve& sieve() {
  static const qpc::SpfSieve s = qpc::build_spf_sieve(1'000'000);
  return s;
}

qpc::RationalBound bound(const benchmark::State& state) {
  return qpc::RationalBound::integer(static_cast<qpc::u64>(state.range(0)));
}

qpc::ParallelOptions threads(const benchmark::State& state) {
  qpc::ParallelOptions o;
  o.threads = static_cast<int>(state.range(1));
  return o;
}

void reference_n_star(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qpc::reference::n_star(sieve(), bound(state)));
}

void kernel_n_star(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qpc::n_star(sieve(), bound(state), threads(state)));
}

void reference_t_exact(benchmark::State& state) {
  const auto B = static_cast<qpc::u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qpc::reference::t_exact(sieve(), B));
}

void kernel_t_exact(benchmark::State& state) {
  const auto B = static_cast<qpc::u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qpc::t_exact(sieve(), B, threads(state)));
}

void reference_n_u(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qpc::reference::n_u(sieve(), bound(state)));
}

void kernel_n_u(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qpc::n_u(sieve(), bound(state), threads(state)));
}

void serial_args(benchmark::internal::Benchmark* b) {
  for (long B : {10'000L, 100'000L, 1'000'000L}) b->Arg(B);
  b->Unit(benchmark::kMillisecond);
}

void parallel_args(benchmark::internal::Benchmark* b) {
  for (long B : {10'000L, 100'000L, 1'000'000L}) {
    for (long t : {1L, 2L, 4L, 8L}) b->Args({B, t});
  }
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(reference_n_star)->Apply(serial_args);
BENCHMARK(kernel_n_star)->Apply(parallel_args);
BENCHMARK(reference_t_exact)->Apply(serial_args);
BENCHMARK(kernel_t_exact)->Apply(parallel_args);
// The literal Moebius sum recomputes n_star at every B/k; keep it small.
BENCHMARK(reference_n_u)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(kernel_n_u)->Args({1'000, 1})->Args({10'000, 1})->Args({10'000, 4})->Args({100'000, 4})
    ->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
