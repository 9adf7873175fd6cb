#include <benchmark/benchmark.h>

#include "gaborlab/frame.hpp"
#include "gaborlab/random.hpp"

namespace {

using namespace gaborlab;

const std::vector<double> kFreqs = {0.25, 0.5, 0.75, 0.0};

ConstructedFrame make_frame(std::int64_t n1) {
  BlockPlan plan(Exponent(4.0), {n1, 2 * n1, 4 * n1});
  auto sel = select_translates(geometric_spread(2 * plan.total_points(), 5, kFreqs), plan);
  return ConstructedFrame(std::move(plan), std::move(sel), required_resolution(3));
}

void BM_BuildFrame(benchmark::State& state) {
  for (auto _ : state) {
    auto frame = make_frame(state.range(0));
    benchmark::DoNotOptimize(frame.q());
  }
  state.SetComplexityN(7 * state.range(0));
}
BENCHMARK(BM_BuildFrame)->Arg(64)->Arg(72)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FrameOperator(benchmark::State& state) {
  const auto frame = make_frame(state.range(0));
  auto eng = rng::trial_engine(1, 1, 0);
  const auto f = frame.random_span_element(eng);
  for (auto _ : state) benchmark::DoNotOptimize(frame_operator(frame, f));
}
BENCHMARK(BM_FrameOperator)->Arg(64)->Arg(72)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto frame = make_frame(72);
  auto eng = rng::trial_engine(1, 1, 0);
  const auto f = frame.random_span_element(eng);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(frame, f, 1e-8).relative_error);
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

// quadruple-by-quadruple error term, the slow oracle route
void BM_ErrorTermOracle(benchmark::State& state) {
  const auto frame = make_frame(state.range(0));
  auto eng = rng::trial_engine(1, 1, 0);
  const auto f = frame.random_span_element(eng);
  for (auto _ : state) benchmark::DoNotOptimize(error_term(frame, f));
}
BENCHMARK(BM_ErrorTermOracle)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DisjointnessCertificate(benchmark::State& state) {
  BlockPlan plan(Exponent(4.0), {72, 144, 288});
  const auto sel = select_translates(geometric_spread(1008, 5, kFreqs), plan);
  for (auto _ : state) benchmark::DoNotOptimize(certify_disjointness(sel.points, plan).passed);
}
BENCHMARK(BM_DisjointnessCertificate)->Unit(benchmark::kMillisecond);

}  // namespace
