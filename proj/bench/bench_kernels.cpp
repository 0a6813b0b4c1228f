#include <benchmark/benchmark.h>

#include <omp.h>

#include <map>

#include "nearsq/kernels.hpp"
#include "nearsq/subset.hpp"

using namespace nearsq;

namespace {

const std::vector<std::uint64_t>& full_set(std::uint64_t N) {
  static std::map<std::uint64_t, std::vector<std::uint64_t>> cache;
  auto& v = cache[N];
  if (v.empty()) v = generate_subset(N, Provenance::full()).elements;
  return v;
}

void BM_WindowTallySerial(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto& A = full_set(N);
  const auto delta = ExactDelta::from_double(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::window_tally(A, A, N, delta).hit_pairs);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(N * N));
}

void BM_WindowTally(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto& A = full_set(N);
  const auto delta = ExactDelta::from_double(0.05);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::window_tally(A, A, N, delta).hit_pairs);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(N * N));
}

void BM_QuadrupleSerial(benchmark::State& state) {
  const auto M = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::quadruple_count(M, M, 1.0 / (M * M), 1.0, 0.5));
}

void BM_Quadruple(benchmark::State& state) {
  const auto M = static_cast<std::uint64_t>(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::quadruple_count(M, M, 1.0 / (M * M), 1.0, 0.5));
}

void BM_BilinearSerial(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto& A = full_set(N);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::bilinear_sums(4, A, A, 1));
}

void BM_Bilinear(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto& A = full_set(N);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::bilinear_sums(4, A, A, 1));
}

}  // namespace

BENCHMARK(BM_WindowTallySerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowTally)->ArgsProduct({{1000, 4000, 16000}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadrupleSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quadruple)->ArgsProduct({{16, 32, 64}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BilinearSerial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bilinear)->ArgsProduct({{500, 1000}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
