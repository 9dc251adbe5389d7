#include "dsaddle/fem.hpp"
#include "dsaddle/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

dsaddle::StoredMatrix stiffness(int cells) {
  const auto fem = dsaddle::q1_discretize(1.0 / cells);
  return dsaddle::StoredMatrix(dsaddle::SparseMatrix(fem.stiffness + fem.mass));
}

void BM_ExtremalEigsDense(benchmark::State& state) {
  const auto k = stiffness(static_cast<int>(state.range(0)));
  const dsaddle::DenseMatrix dense = k.to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(dsaddle::extremal_eigs(dense));
}
BENCHMARK(BM_ExtremalEigsDense)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ExtremalEigsLanczos(benchmark::State& state) {
  const auto k = stiffness(static_cast<int>(state.range(0)));
  dsaddle::SpectralOptions opts;
  opts.dense_cutoff = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dsaddle::extremal_eigs(k, opts));
}
BENCHMARK(BM_ExtremalEigsLanczos)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
