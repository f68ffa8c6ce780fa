#include <benchmark/benchmark.h>

#include "sumrule/ensemble.hpp"
#include "sumrule/sumrules.hpp"

using namespace sumrule;

namespace {

JacobiOperator bench_operator() {
  Rng rng(99);
  return random_half_line(rng, 6, 0.4, 0.4);
}

void BM_LambdaA(benchmark::State& state) {
  JacobiOperator J = bench_operator();
  SpectralData sd = SpectralData::build(J);
  ChebUExpansion A = u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2));
  int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Lambda_A(sd, A, nodes));
}
BENCHMARK(BM_LambdaA)->Arg(500)->Arg(2000)->Arg(8000);

void BM_SpectralDataBuild(benchmark::State& state) {
  JacobiOperator J = bench_operator();
  for (auto _ : state) benchmark::DoNotOptimize(SpectralData::build(J));
}
BENCHMARK(BM_SpectralDataBuild);

void BM_HViaTrace(benchmark::State& state) {
  JacobiOperator J = bench_operator();
  ChebUExpansion A = u_product(ChebUExpansion::basis(3), ChebUExpansion::basis(3));
  for (auto _ : state) benchmark::DoNotOptimize(H_via_trace(J, A));
}
BENCHMARK(BM_HViaTrace);

void BM_DeltaViaTraces(benchmark::State& state) {
  JacobiOperator J = bench_operator();
  cdouble z(0.0, 4.0 * gershgorin_radius(J));
  int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(delta_via_traces(J, z, K));
}
BENCHMARK(BM_DeltaViaTraces)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
