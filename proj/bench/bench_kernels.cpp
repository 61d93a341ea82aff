#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "toymodel/kernels.hpp"

using namespace toymodel;

namespace {

std::vector<double> random_reals(std::size_t n, double lo, double hi) {
  std::mt19937_64 g(n);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

std::vector<cplx> random_amplitudes(std::size_t n) {
  const auto a = random_reals(n, 0.2, 1.0);
  const auto p = random_reals(n + 1, -3.0, 3.0);
  std::vector<cplx> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = std::polar(a[k], p[k]);
  return b;
}

template <auto Kernel>
void toy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = random_amplitudes(n);
  std::vector<cplx> db(n);
  for (auto _ : state) {
    Kernel(b, db);
    benchmark::DoNotOptimize(db.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void alt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rho = random_reals(n, 0.01, 1.0);
  const auto theta = random_reals(n, -3.0, 3.0);
  std::vector<double> drho(n), dtheta(n);
  for (auto _ : state) {
    Kernel(rho, theta, drho, dtheta, FirstNodePhase::anchored);
    benchmark::DoNotOptimize(drho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void symmetric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rho = random_reals(n, 0.0, 2.0);
  std::vector<double> drho(n);
  for (auto _ : state) {
    Kernel(rho, drho);
    benchmark::DoNotOptimize(drho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(toy<kernels::serial::toy_rhs>)->Name("toy_rhs/serial")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(toy<kernels::toy_rhs>)->Name("toy_rhs/openmp")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(alt<kernels::serial::alt_hydro_rhs>)->Name("alt_hydro_rhs/serial")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(alt<kernels::alt_hydro_rhs>)->Name("alt_hydro_rhs/openmp")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(symmetric<kernels::serial::symmetric_burgers_rhs>)->Name("symmetric_burgers_rhs/serial")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(symmetric<kernels::symmetric_burgers_rhs>)->Name("symmetric_burgers_rhs/openmp")->RangeMultiplier(8)->Range(64, 1 << 18);

BENCHMARK_MAIN();
