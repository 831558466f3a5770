// Serial reference vs OpenMP kernels on representative workloads.

#include <benchmark/benchmark.h>

#include "hypercvx/linalg.hpp"
#include "hypercvx/matrices.hpp"
#include "hypercvx/polynomials.hpp"
#include "hypercvx/table.hpp"

using namespace hypercvx;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::OpenMP;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

void BM_q_matrix(benchmark::State& state) {
  EdgeIndex ix(9, 2);  // m = 36
  MultiIndex gamma = MultiIndex::unit(0).plus(1);
  for (auto _ : state) {
    CoefficientCache cache(ix);  // cold table each round
    benchmark::DoNotOptimize(matrix_Q_direct(gamma, cache, exec_of(state)));
  }
  label(state);
}

void BM_q_recursive(benchmark::State& state) {
  EdgeIndex ix(8, 2);
  MultiIndex gamma = MultiIndex::unit(0).plus(1).plus(2);
  for (auto _ : state) {
    CoefficientCache cache(ix);
    benchmark::DoNotOptimize(matrix_Q_recursive(gamma, cache, exec_of(state)));
  }
  label(state);
}

void BM_eval_monomial(benchmark::State& state) {
  EdgeIndex ix(8, 3);  // m = 56
  std::vector<double> x(ix.size(), 1.0 / ix.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        eval_p(x, 4, ix, EvalPath::MonomialBasis, exec_of(state)));
  label(state);
}

void BM_hessian_eval(benchmark::State& state) {
  EdgeIndex ix(8, 3);
  CoefficientCache cache(ix);
  HessianAssembly hp(HessianAssembly::Kind::P, 4, cache);
  std::vector<double> x(ix.size(), 1.0 / ix.size());
  for (auto _ : state) benchmark::DoNotOptimize(hp.evaluate(x, exec_of(state)));
  label(state);
}

void BM_table_rows(benchmark::State& state) {
  RunConfig cfg;
  cfg.d = 4;
  cfg.L = 2;
  cfg.n_min = 3;
  cfg.n_max = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_table_rows(cfg, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_q_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_q_recursive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_monomial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hessian_eval)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_table_rows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
