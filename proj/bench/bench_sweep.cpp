#include <benchmark/benchmark.h>

#include "hhdr/dynamics.hpp"
#include "hhdr/lme.hpp"
#include "hhdr/sweep.hpp"

namespace {

hhdr::SweepSpec alpha_spec(int threads) {
  hhdr::SweepSpec s;
  s.threads = threads;
  return s;
}

void BM_AlphaSweepSerial(benchmark::State& state) {
  const hhdr::SweepSpec s = alpha_spec(1);
  for (auto _ : state) benchmark::DoNotOptimize(hhdr::sweep_alpha_serial(s).values.data());
  state.SetItemsProcessed(state.iterations() * 61 * 81);
}

void BM_AlphaSweepParallel(benchmark::State& state) {
  const hhdr::SweepSpec s = alpha_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hhdr::sweep_alpha(s).values.data());
  state.SetItemsProcessed(state.iterations() * 61 * 81);
}

hhdr::SweepSpec amplitude_spec(int threads) {
  hhdr::SweepSpec s;
  s.delta_b = {0.5, 0.9, 2};
  s.omega_b1 = {0.3, 0.4, 2};
  s.threads = threads;
  return s;
}

hhdr::IntegrationSpec short_integration() {
  hhdr::IntegrationSpec is;
  is.t_end = 2000.0;
  is.rel_tol = 1e-7;
  is.abs_tol = 1e-10;
  return is;
}

void BM_AmplitudeSweepSerial(benchmark::State& state) {
  const hhdr::SweepSpec s = amplitude_spec(1);
  const hhdr::IntegrationSpec is = short_integration();
  for (auto _ : state) benchmark::DoNotOptimize(hhdr::sweep_amplitude_serial(s, is).values.data());
}

void BM_AmplitudeSweepParallel(benchmark::State& state) {
  const hhdr::SweepSpec s = amplitude_spec(static_cast<int>(state.range(0)));
  const hhdr::IntegrationSpec is = short_integration();
  for (auto _ : state) benchmark::DoNotOptimize(hhdr::sweep_amplitude(s, is).values.data());
}

void BM_LmeCampaignSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hhdr::lme_random_campaign_serial({2, 3, 4}, 200, 7).symmetric_bound_passes);
  }
}

void BM_LmeCampaignParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hhdr::lme_random_campaign({2, 3, 4}, 200, 7, threads).symmetric_bound_passes);
  }
}

}  // namespace

BENCHMARK(BM_AlphaSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlphaSweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AmplitudeSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmplitudeSweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LmeCampaignSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LmeCampaignParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
