#include "aphj/integer_matrix.hpp"
#include "aphj/kronecker.hpp"
#include "aphj/sampled_line.hpp"
#include "aphj/solver.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace aphj;

namespace {

constexpr double kPi = std::numbers::pi;

TorusField sine_field(int rank, int N) {
  TorusField v = TorusField::zeros(rank, N);
  if (rank == 1) {
    for (int j = 0; j < N; ++j)
      v.data[static_cast<std::size_t>(j)] = std::sin(2 * kPi * j / static_cast<double>(N));
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        v.data[static_cast<std::size_t>(i * N + j)] =
            std::sin(2 * kPi * i / static_cast<double>(N)) +
            0.5 * std::sin(2 * kPi * j / static_cast<double>(N));
  }
  return v;
}

void BM_StepRank1(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  SolveConfig cfg;
  cfg.gridN = N;
  cfg.tFinal = 1.0;
  cfg.snapshotCadence = 1.0;
  LiftedStepper st(sine_field(1, N), Hamiltonian::quadratic(), {{1.0}}, cfg, false);
  for (auto _ : state) st.step();
  state.SetItemsProcessed(state.iterations() * N);
}

void BM_StepRank2(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  SolveConfig cfg;
  cfg.gridN = N;
  cfg.tFinal = 1.0;
  cfg.snapshotCadence = 1.0;
  LiftedStepper st(sine_field(2, N), Hamiltonian::quadratic(),
                   {{1.0}, {std::numbers::sqrt2}}, cfg, false);
  for (auto _ : state) st.step();
  state.SetItemsProcessed(state.iterations() * N * N);
}

void BM_NormalForm(benchmark::State& state) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-50, 50);
  IntegerMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = Int(entry(rng));
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}

void BM_KroneckerFill(benchmark::State& state) {
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kronecker_fill_distance({1.0, std::numbers::sqrt2}, 500.0, samples, 16));
}

void BM_FrequencyProbe(benchmark::State& state) {
  const int K = 70 * 64;
  SampledLine u;
  u.length = 70.0;
  u.periodic = true;
  u.values.resize(K);
  for (int j = 0; j < K; ++j) {
    const double x = 70.0 * j / static_cast<double>(K);
    u.values[static_cast<std::size_t>(j)] =
        std::sin(2 * kPi * x) + 0.5 * std::sin(2 * kPi * (99.0 / 70.0) * x);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(bohr_probe_sampled(u, 99.0 / 70.0, 70.0));
}

} // namespace

BENCHMARK(BM_StepRank1)->Arg(256)->Arg(1024);
BENCHMARK(BM_StepRank2)->Arg(64)->Arg(256);
BENCHMARK(BM_NormalForm);
BENCHMARK(BM_KroneckerFill)->Arg(10000)->Arg(50000);
BENCHMARK(BM_FrequencyProbe);

BENCHMARK_MAIN();
