#include "dsaddle/cubic.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

void BM_ClassifiedRoots(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<double> params(5 * 1024);
  for (auto& p : params) p = u(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    const double* p = &params[5 * (i++ % 1024)];
    benchmark::DoNotOptimize(dsaddle::classified_roots(p[0], p[1], p[2], p[3], p[4]));
  }
}
BENCHMARK(BM_ClassifiedRoots);

}  // namespace
