#include "dsaddle/fem.hpp"
#include "dsaddle/krylov.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_MinresExactDistributed(benchmark::State& state) {
  const auto dc = dsaddle::poisson_distributed(1.0 / static_cast<double>(state.range(0)), 1e-3);
  const auto k = dsaddle::assemble(dc.flipped).data;
  const dsaddle::PreconditionerOperator m = dsaddle::build_exact(dc.flipped);
  const dsaddle::Vector b = dsaddle::Vector::Ones(dc.flipped.dims().total());
  for (auto _ : state) benchmark::DoNotOptimize(dsaddle::minres(k, &m, b));
}
BENCHMARK(BM_MinresExactDistributed)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MinresUnpreconditioned(benchmark::State& state) {
  const auto dc = dsaddle::poisson_distributed(1.0 / static_cast<double>(state.range(0)), 1e-3);
  const auto k = dsaddle::assemble(dc.flipped).data;
  const dsaddle::Vector b = dsaddle::Vector::Ones(dc.flipped.dims().total());
  dsaddle::MinresOptions opts;
  opts.maxit = 200;
  for (auto _ : state) benchmark::DoNotOptimize(dsaddle::minres(k, nullptr, b, opts));
}
BENCHMARK(BM_MinresUnpreconditioned)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
