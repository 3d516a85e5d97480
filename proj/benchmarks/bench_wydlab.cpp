#include <array>
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "wyd/entropy.hpp"
#include "wyd/random.hpp"
#include "wyd/superop.hpp"
#include "wyd/wedderburn.hpp"

using namespace wyd;

namespace {

struct Pair {
  Matrix k;
  HermitianMatrix a, b;
};

Pair make_pair_instance(Index d) {
  const std::array<Index, 1> dims{d};
  Engine rng = make_engine(7, "bench", dims, 0);
  return {ginibre(d, d, rng), random_pd(d, rng), random_pd(d, rng)};
}

void run_j(benchmark::State& state, Route route) {
  const auto in = make_pair_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(j_p(in.k, in.a, in.b, 0.75, route).value);
}

void BM_JpDirect(benchmark::State& s) { run_j(s, Route::direct); }
void BM_JpModular(benchmark::State& s) { run_j(s, Route::modular); }
void BM_JpQuadrature(benchmark::State& s) { run_j(s, Route::quadrature); }

void BM_ModularApply(benchmark::State& state) {
  const auto in = make_pair_instance(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        modular_apply(in.a, in.b, [](double x) { return std::pow(x, 0.3); }, in.k));
  }
}

void BM_Wedderburn(benchmark::State& state) {
  const Index d = state.range(0);
  std::vector<HermitianMatrix> gens;
  RealVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = static_cast<double>(i % 2);
  gens.push_back(HermitianMatrix::diagonal(v));
  for (auto _ : state) benchmark::DoNotOptimize(wedderburn_decompose(gens));
}

}  // namespace

BENCHMARK(BM_JpDirect)->DenseRange(2, 8, 3);
BENCHMARK(BM_JpModular)->DenseRange(2, 8, 3);
BENCHMARK(BM_JpQuadrature)->DenseRange(2, 8, 3);
BENCHMARK(BM_ModularApply)->DenseRange(2, 8, 3);
BENCHMARK(BM_Wedderburn)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
