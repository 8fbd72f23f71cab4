// Copyright 2026 The qcoex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qcoex/mcsim.hpp"
#include "qcoex/network.hpp"
#include "qcoex/raman.hpp"
#include "qcoex/rates.hpp"
#include "qcoex/tomo.hpp"

using namespace qcoex;

static void BM_GainDensity(benchmark::State& state) {
  auto table = raman::default_table();
  double om = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(raman::gain_density(table, om));
    om += 0.37;
    if (om > 59.0) om -= 59.0;
  }
}
BENCHMARK(BM_GainDensity);

static void BM_SprsRatePlan(benchmark::State& state) {
  auto table = raman::default_table();
  auto plan = net::default_wdm_plan(18.1);
  net::FiberLink link{"metro47", 47.9, net::default_attenuation(), 3.893,
                      true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        raman::sprs_rate_plan(table, plan, 1310.0, 50.0, link));
  }
}
BENCHMARK(BM_SprsRatePlan);

static void BM_CoincidenceRates(benchmark::State& state) {
  src::EppSource source;
  source.mu = 0.01;
  rates::ArmConfig arm;
  arm.loss_db = 20.0;
  arm.noise_cps = 500.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rates::coincidence_rates(source, 1.0, arm, arm, {}));
  }
}
BENCHMARK(BM_CoincidenceRates);

static void BM_SimulateEvents(benchmark::State& state) {
  mc::SimConfig cfg;
  cfg.n_pulses = static_cast<uint64_t>(state.range(0));
  cfg.mu = 0.01;
  cfg.signal.eta_total = 0.3;
  cfg.idler.eta_total = 0.3;
  cfg.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::simulate_events(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateEvents)->Arg(1 << 16)->Arg(1 << 20);

static void BM_CountCoincidences(benchmark::State& state) {
  mc::SimConfig cfg;
  cfg.n_pulses = 1 << 20;
  cfg.mu = 0.05;
  cfg.signal.eta_total = 0.5;
  cfg.idler.eta_total = 0.5;
  auto res = mc::simulate_events(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::count_coincidences(
        res.signal, res.idler, 600.0, res.duration_s, res.pulse_period_ps));
  }
}
BENCHMARK(BM_CountCoincidences);

static void BM_MleReconstruct(benchmark::State& state) {
  auto rho = tomo::DensityMatrix::werner(0.9);
  auto counts = tomo::expected_counts(rho, tomo::all_settings(2), 1e5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomo::mle_reconstruct(counts, 4));
  }
}
BENCHMARK(BM_MleReconstruct);

BENCHMARK_MAIN();
