#include <benchmark/benchmark.h>

#include "kysharp/lambda.hpp"
#include "kysharp/optimum.hpp"
#include "kysharp/quadrature.hpp"

using namespace kysharp;
using namespace kysharp::quadrature;

static void BM_GaussJacobiBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double alpha = 0.1;
  for (auto _ : state) {
    // a fresh exponent each pass defeats the rule cache
    alpha += 1e-9;
    benchmark::DoNotOptimize(gauss_jacobi(n, alpha, -0.5).nodes.data());
  }
}
BENCHMARK(BM_GaussJacobiBuild)->Arg(32)->Arg(128)->Arg(512);

static void BM_LambdaCurves(benchmark::State& state) {
  const WeightSpec weights[] = {WeightSpec::type_b(2.0), WeightSpec::type_c(2.0), WeightSpec::gaussian()};
  const LambdaEvaluator ev(make_problem(3, weights[state.range(0)], "schrodinger", 0.0));
  const int k_max = static_cast<int>(state.range(1));
  double r = 0.5;
  for (auto _ : state) {
    r = r > 50 ? 0.5 : r * 1.1;
    benchmark::DoNotOptimize(ev.lambda(r, k_max));
  }
  state.SetItemsProcessed(state.iterations() * (k_max + 1));
}
BENCHMARK(BM_LambdaCurves)->ArgsProduct({{0, 1, 2}, {8, 64}});

static void BM_SupSearch(benchmark::State& state) {
  SearchPolicy policy;
  policy.prefer_closed_form = false;
  const ProblemSpec spec = make_problem(3, WeightSpec::type_a(2.0), "schrodinger", 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(schrodinger_constant(spec, policy).value);
}
BENCHMARK(BM_SupSearch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
