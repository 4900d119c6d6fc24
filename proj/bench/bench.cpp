// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include "cayley/classify.hpp"
#include "cayley/engine.hpp"
#include "cayley/enumerate.hpp"

using namespace cayley;

namespace {

const Basis kHare = Basis::parse("231 312 2121");

void BM_CountAvoidersSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_avoiders_serial(kHare, n));
}

void BM_CountAvoidersParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_avoiders(kHare, n));
}

void BM_SurveySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(survey_size3_serial().total_either);
}

void BM_SurveyParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(survey_size3().total_either);
}

void explore_case(benchmark::State& state, bool parallel) {
  const auto basis = Basis::parse(state.range(0) == 0 ? "231 312 2121" : "123 231");
  const Mode mode = state.range(0) == 0 ? Mode::vertical : Mode::horizontal;
  ExploreOptions o;
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(explore(basis, mode, o).symbols.size());
}

void BM_ExploreSerial(benchmark::State& state) { explore_case(state, false); }
void BM_ExploreParallel(benchmark::State& state) { explore_case(state, true); }

}  // namespace

BENCHMARK(BM_CountAvoidersSerial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountAvoidersParallel)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurveySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurveyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
