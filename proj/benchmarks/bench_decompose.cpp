#include <benchmark/benchmark.h>

#include "gadkit/apolarity.hpp"
#include "gadkit/benchlab.hpp"
#include "gadkit/decomposer.hpp"
#include "gadkit/poly_io.hpp"

using namespace gadkit;

namespace {

Poly waring() {
  return pow(parse_poly("x0 + 2*x1 + 2*x2", 3), 4) * cplx(-3.0) + pow(parse_poly("x0 + x1 + x2", 3), 4) +
         pow(parse_poly("x0 + 3*x1 - x2", 3), 4);
}

Poly random_form(int n, int d, const std::vector<int>& ks) {
  Rng rng(kDefaultSeed);
  return reconstruct(random_gad(n, d, ks, rng));
}

void BM_CheckF(benchmark::State& state) {
  const Poly f = random_form(static_cast<int>(state.range(0)), 3, {0, 0, 0, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(check_f(f));
}
BENCHMARK(BM_CheckF)->Arg(2)->Arg(5)->Arg(9);

void BM_HankelFamily(benchmark::State& state) {
  const Poly f = random_form(static_cast<int>(state.range(0)), 3, {0, 0, 0, 0, 0});
  const DualSeries fs = check_f(f);
  for (auto _ : state) benchmark::DoNotOptimize(hankel_family(fs, 3));
}
BENCHMARK(BM_HankelFamily)->Arg(2)->Arg(5)->Arg(9);

void BM_DecomposeWaring(benchmark::State& state) {
  const Poly f = waring();
  for (auto _ : state) benchmark::DoNotOptimize(gad_decompose(f));
}
BENCHMARK(BM_DecomposeWaring);

void BM_DecomposeMultiplePoints(benchmark::State& state) {
  const Poly f = parse_poly("x0^3*x1*x2", 3) + pow(parse_poly("x0 + 0.5*x1 + 2*x2", 3), 4) * parse_poly("x0 + x2", 3);
  for (auto _ : state) benchmark::DoNotOptimize(gad_decompose(f));
}
BENCHMARK(BM_DecomposeMultiplePoints);

void BM_DecomposeRandom(benchmark::State& state) {
  const Poly f = random_form(static_cast<int>(state.range(0)), 3, {0, 0, 0, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(gad_decompose(f));
}
BENCHMARK(BM_DecomposeRandom)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_SweepLevel(benchmark::State& state) {
  BenchConfig c;
  c.n = 2;
  c.d = 5;
  c.ks = {1, 1, 0};
  c.eps = {1e-8};
  c.trials = 10;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(c));
}
BENCHMARK(BM_SweepLevel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
