#include <benchmark/benchmark.h>

#include "sumrule/asymptotics.hpp"
#include "sumrule/ensemble.hpp"
#include "sumrule/lns.hpp"

using namespace sumrule;

namespace {

JacobiOperator bench_whole() {
  Rng rng(7);
  return random_whole_line(rng, 6, 0.3, 0.3);
}

void BM_TofJ(benchmark::State& state) {
  JacobiOperator J = bench_whole();
  int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(T_of_J(J, l));
}
BENCHMARK(BM_TofJ)->Arg(4)->Arg(8)->Arg(16);

void BM_HankelToeplitzPsd(benchmark::State& state) {
  JacobiOperator J = bench_whole();
  for (auto _ : state) benchmark::DoNotOptimize(hankel_toeplitz_psd(J, 8));
}
BENCHMARK(BM_HankelToeplitzPsd);

void BM_NormalizedPn(benchmark::State& state) {
  JacobiOperator J = JacobiOperator::make(Side::half_line, {{1, 1.1}, {2, 0.95}},
                                          {{0, 1.4}, {1, 0.2}, {2, -0.1}});
  ChebUExpansion A = u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2));
  int n = static_cast<int>(state.range(0));
  NormalizationPoly Bt = compute_B_tilde(J, n, A);
  cdouble z(2.2, 1.8);
  for (auto _ : state) benchmark::DoNotOptimize(normalized_Pn_with(J, n, Bt, A, z));
}
BENCHMARK(BM_NormalizedPn)->Arg(50)->Arg(200);

}  // namespace
