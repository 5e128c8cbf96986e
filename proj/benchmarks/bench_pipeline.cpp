#include <benchmark/benchmark.h>

#include "mwqi/cli/commands.hpp"

namespace {

using namespace mwqi;

void BM_Coefficients(benchmark::State& state) {
  const auto fidelity = static_cast<Fidelity>(state.range(0));
  const SimulationConfig c = fig2_preset();
  const ConverterRates rates = converter_rates(c.params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coefficients(fidelity, 5181.95, 668.43, rates, KappaRatios{0.9, 0.9}, 1e4));
  }
}
BENCHMARK(BM_Coefficients)->Arg(0)->Arg(1)->Arg(2);

void BM_Stability(benchmark::State& state) {
  const ConverterRates rates = converter_rates(fig2_preset().params);
  for (auto _ : state) benchmark::DoNotOptimize(stability(5181.95, 668.43, rates));
}
BENCHMARK(BM_Stability);

void BM_EvaluatePoint(benchmark::State& state) {
  const SimulationConfig c = fig2_preset();
  for (auto _ : state) benchmark::DoNotOptimize(cli::evaluate_point(c, 5181.95, 668.43, true));
}
BENCHMARK(BM_EvaluatePoint);

void BM_AdvantageSweep(benchmark::State& state) {
  const SimulationConfig c = fig2_preset();
  const cli::Axis gw{"Gamma_w", 0.0, 1e4, 41, false};
  const cli::Axis go{"Gamma_o", 0.0, 1e4, 41, false};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cli::sweep_advantage(c, gw, go, threads));
  state.SetItemsProcessed(state.iterations() * 41 * 41);
}
BENCHMARK(BM_AdvantageSweep)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
