#include <benchmark/benchmark.h>

#include "patchladder/patchladder.hpp"

using namespace patchladder;

namespace {

Netlist canonical_ladder() {
  const Substrate fr4(4.4, 1.7e-3);
  const auto cavities = canonical_cavities();
  const auto elements = extract_all(cavities, fr4);
  return from_elements(elements, FeedLine{microstrip(cavities[0].width, fr4.thickness(), fr4.relative_permittivity()),
                                          cavities[0].length});
}

void BM_Sweep(benchmark::State& state) {
  const auto net = canonical_ladder();
  const SweepGrid grid{0.1e9, 6e9, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(net, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(201)->Arg(1201)->Arg(10001);

void BM_TouchstoneWrite(benchmark::State& state) {
  const auto trace = sweep(canonical_ladder(), {0.1e9, 6e9, 1201});
  for (auto _ : state) benchmark::DoNotOptimize(write_touchstone(trace));
}
BENCHMARK(BM_TouchstoneWrite);

void BM_TouchstoneRead(benchmark::State& state) {
  const auto text = write_touchstone(sweep(canonical_ladder(), {0.1e9, 6e9, 1201}));
  for (auto _ : state) benchmark::DoNotOptimize(read_touchstone(text));
}
BENCHMARK(BM_TouchstoneRead);

void BM_FitTwoParameters(benchmark::State& state) {
  const auto truth = canonical_ladder();
  const SweepGrid grid{0.1e9, 6e9, 201};
  const auto start = truth.with_parameter("s2", Param::L, *truth.section("s2").get(Param::L) * 1.3);
  const double l = *start.section("s2").get(Param::L);
  const double c = *start.section("s2").get(Param::C);
  FitProblem problem{start, {{"s2", Param::L, l / 10, l * 10}, {"s2", Param::C, c / 10, c * 10}}, sweep(truth, grid), grid};
  for (auto _ : state) benchmark::DoNotOptimize(fit(problem));
}
BENCHMARK(BM_FitTwoParameters)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
