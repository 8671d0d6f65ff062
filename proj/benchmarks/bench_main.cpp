#include <benchmark/benchmark.h>

#include "natdual/natdual.hpp"

using namespace natdual;
using namespace natdual::cases;

namespace {

void BM_EnumerateHoms(benchmark::State& state) {
  const FiniteAlgebra a = median_power(static_cast<int>(state.range(0)));
  const FiniteAlgebra m = median_two();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_homs(a, m));
  state.SetLabel("|A| = " + std::to_string(a.size()));
}
BENCHMARK(BM_EnumerateHoms)->DenseRange(1, 4);

void BM_NaturalExtension(benchmark::State& state) {
  const auto suite = dl_suite(8);
  const FiniteAlgebra& l = suite.back().algebra;
  for (auto _ : state) benchmark::DoNotOptimize(natural_extension(l, dl_ego()));
}
BENCHMARK(BM_NaturalExtension);

void BM_PointWindowL(benchmark::State& state) {
  const auto c = *find_case_function("l-parity");
  const ProElement x = *c.space->parse_point("evens");
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(point_window(*c.space, c.target, c.map, x, c.window, depth));
}
BENCHMARK(BM_PointWindowL)->Arg(6)->Arg(9)->Arg(12);

void BM_UPrimeAtInfinity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(median_u_prime_smoothness(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_UPrimeAtInfinity)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
