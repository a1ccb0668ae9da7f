#include <benchmark/benchmark.h>

#include "betacalc/betacalc.hpp"

using namespace betacalc;

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse("3*(x - 0.5)^3 - 2*sin(x)/(1 + x^2) + sgn(x)"));
  }
}
BENCHMARK(BM_Parse);

static void BM_Integral(benchmark::State& state) {
  const BetaMap map = make_jackson(static_cast<double>(state.range(0)) / 100.0);
  const Expr f = parse("x^3 - 2*x + 1");
  for (auto _ : state) benchmark::DoNotOptimize(integral(map, f, -1.0, 2.0).value);
}
BENCHMARK(BM_Integral)->Arg(10)->Arg(50)->Arg(90);

static void BM_Korkine(benchmark::State& state) {
  const BetaMap map = make_hahn(0.5, 0.25);
  const Expr f = parse("x^2");
  const Expr g = parse("x^3 - x");
  for (auto _ : state) benchmark::DoNotOptimize(korkine(map, f, g, -1.0, 2.0));
}
BENCHMARK(BM_Korkine);

static void BM_GrussSuite(benchmark::State& state) {
  SuiteOptions opts;
  opts.cases = 100;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(Suite::gruss, opts).failures);
}
BENCHMARK(BM_GrussSuite);

BENCHMARK_MAIN();
