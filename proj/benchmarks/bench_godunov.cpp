#include <benchmark/benchmark.h>

#include "condensate/conslaw.hpp"
#include "condensate/datum.hpp"
#include "condensate/measure.hpp"

namespace {

using namespace condensate;

conslaw::HalfLineState example_state(std::size_t n, double gamma) {
  const GammaConfig cfg{gamma, 1};
  const auto datum = InitialDatum::example36(gamma);
  return conslaw::init_from_datum(datum, conslaw::HalfLineGrid::covering(datum, n, cfg), cfg).second;
}

void BM_Step(benchmark::State& st) {
  const GammaConfig cfg{1.0, 1};
  const auto n = static_cast<std::size_t>(st.range(0));
  auto s = example_state(n, cfg.gamma);
  for (auto _ : st) {
    s = conslaw::step(std::move(s), 0.9, cfg);
    // Keep the history from growing across iterations.
    s.trace_history.clear();
    benchmark::DoNotOptimize(s.cells.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(256, 16384);

void BM_RunUntilBlowUp(benchmark::State& st) {
  const GammaConfig cfg{1.0, 1};
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto init = example_state(n, cfg.gamma);
  for (auto _ : st) {
    auto s = conslaw::run_until(init, 2.0, 0.9, cfg);
    benchmark::DoNotOptimize(s.outflux_ledger);
  }
}
BENCHMARK(BM_RunUntilBlowUp)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_AssembleAndInvert(benchmark::State& st) {
  const GammaConfig cfg{1.0, 1};
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto datum = InitialDatum::example36(cfg.gamma);
  auto [l, r] = conslaw::init_from_datum(datum, conslaw::HalfLineGrid::covering(datum, n, cfg), cfg);
  r = conslaw::run_until(std::move(r), 2.0, 0.9, cfg);
  l = conslaw::run_until(std::move(l), 2.0, 0.9, cfg);
  for (auto _ : st) {
    const auto ms = measure::assemble(l, r, cfg);
    const auto pi = measure::pseudo_inverse(ms, n);
    benchmark::DoNotOptimize(pi.x_values.data());
  }
}
BENCHMARK(BM_AssembleAndInvert)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
