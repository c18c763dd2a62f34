#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "persist/filtered_complex.hpp"
#include "persist/metric_geometry.hpp"
#include "persist/module_rep.hpp"
#include "scenarios.hpp"

using namespace persist;

namespace {

FilteredComplex noisy_circle_rips(std::size_t n) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0, 0.05);
  PointCloud P;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 2 * 3.141592653589793 * static_cast<double>(i) / static_cast<double>(n);
    P.points.push_back({std::cos(t) + noise(rng), std::sin(t) + noise(rng)});
  }
  return rips_complex(euclidean_metric(P), 2, 1.2);
}

ModuleRep sample_module(std::size_t bars) {
  oracle::Rng rng(6);
  oracle::BarcodeShape shape;
  shape.max_bars = bars;
  shape.step = 0.25;
  shape.hi = 10;
  shape.allow_empty = false;
  return from_barcode(oracle::random_barcode(rng, shape), Field(7));
}

FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  PointCloud P;
  for (std::size_t i = 0; i < n; ++i) P.points.push_back({U(rng), U(rng)});
  return euclidean_metric(P);
}

void BM_rank_table(benchmark::State& st) {
  ModuleRep V = sample_module(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rank_table(V));
}
void BM_rank_table_serial(benchmark::State& st) {
  ModuleRep V = sample_module(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::rank_table(V));
}

void BM_homology_slices(benchmark::State& st) {
  FilteredComplex C = noisy_circle_rips(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(homology_slices(C, 1, Field(3)));
}
void BM_homology_slices_serial(benchmark::State& st) {
  FilteredComplex C = noisy_circle_rips(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::homology_slices(C, 1, Field(3)));
}

void BM_gh(benchmark::State& st) {
  auto n = static_cast<std::size_t>(st.range(0));
  FiniteMetricSpace X = random_space(n, 1), Y = random_space(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(gh_bruteforce(X, Y));
}
void BM_gh_serial(benchmark::State& st) {
  auto n = static_cast<std::size_t>(st.range(0));
  FiniteMetricSpace X = random_space(n, 1), Y = random_space(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(serial::gh_bruteforce(X, Y));
}

}  // namespace

BENCHMARK(BM_rank_table)->Arg(8)->Arg(32);
BENCHMARK(BM_rank_table_serial)->Arg(8)->Arg(32);
BENCHMARK(BM_homology_slices)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_homology_slices_serial)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gh)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gh_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
