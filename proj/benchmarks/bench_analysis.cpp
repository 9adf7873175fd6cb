#include <benchmark/benchmark.h>

#include "gaborlab/counterexamples.hpp"
#include "gaborlab/fourier.hpp"
#include "gaborlab/haar.hpp"
#include "gaborlab/random.hpp"
#include "gaborlab/stochastic.hpp"

namespace {

using namespace gaborlab;

SampledFunction random_function(int m, std::size_t cells) {
  auto eng = rng::trial_engine(2, 2, static_cast<std::uint64_t>(m));
  Grid grid(0.0, m, cells << m);
  std::vector<Complex> v(grid.count());
  for (auto& x : v) x = rng::complex_box(eng);
  return SampledFunction(grid, std::move(v));
}

void BM_LpNorm(benchmark::State& state) {
  const auto f = random_function(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(f, 3.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_LpNorm)->DenseRange(4, 12, 4);

void BM_HaarExpand(benchmark::State& state) {
  const auto f = random_function(static_cast<int>(state.range(0)), 4);
  const Exponent p(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(haar_expand(f, p));
}
BENCHMARK(BM_HaarExpand)->DenseRange(2, 8, 3);

void BM_RademacherExact(benchmark::State& state) {
  auto eng = rng::trial_engine(3, 3, 0);
  const auto fs = random_atom_family(eng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rademacher_pnorm_exact(fs, 3.0));
}
BENCHMARK(BM_RademacherExact)->DenseRange(4, 12, 4);

void BM_KhintchineExact(benchmark::State& state) {
  std::vector<Complex> a(static_cast<std::size_t>(state.range(0)), Complex(0.5, -0.25));
  for (auto _ : state) benchmark::DoNotOptimize(khintchine_ratio(a, 3.0));
}
BENCHMARK(BM_KhintchineExact)->Arg(12)->Arg(20);

void BM_PartialSum(benchmark::State& state) {
  auto eng = rng::trial_engine(4, 4, 0);
  const auto f = random_corpus_function(eng);
  for (auto _ : state) benchmark::DoNotOptimize(partial_sum(f, FrequencyInterval(-1.0, 2.0)));
}
BENCHMARK(BM_PartialSum);

void BM_RdfSquareNorm(benchmark::State& state) {
  auto eng = rng::trial_engine(4, 4, 1);
  const auto f = random_corpus_function(eng);
  const auto family = equal_length_partition(f.grid(), 0.5, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(rdf_square_norm(f, family, 4.0));
}
BENCHMARK(BM_RdfSquareNorm)->Unit(benchmark::kMillisecond);

void BM_Thm42Verify(benchmark::State& state) {
  const Exponent p(1.5);
  const auto c = WeightSequence::from_tail_weights(power_law_weights(8, kThm42Alpha), p.p());
  for (auto _ : state) benchmark::DoNotOptimize(thm42_verify(c, p, 8, 8, 10, 1).max_ratio);
}
BENCHMARK(BM_Thm42Verify)->Unit(benchmark::kMillisecond);

void BM_Thm52Verify(benchmark::State& state) {
  const Exponent p(4.0);
  const auto c = thm52_truncated_weights(6, kThm52Beta, p.p());
  for (auto _ : state) benchmark::DoNotOptimize(thm52_verify(c, p, 6, 8, 10, 1, 64).max_ratio);
}
BENCHMARK(BM_Thm52Verify)->Unit(benchmark::kMillisecond);

}  // namespace
