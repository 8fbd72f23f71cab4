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
//
// Event-level Monte Carlo: timestamped detection streams from the full
// physical model, used as ground truth for the analytic rates module.
// All sampling is hand-rolled on top of mt19937_64 with per-block seeds so
// streams are bit-identical across runs and worker counts.

#ifndef QCOEX_MCSIM_HPP_
#define QCOEX_MCSIM_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace qcoex::mc {

enum class Origin : uint8_t { kPair = 0, kNoise = 1, kDark = 2 };

struct Event {
  double t_ps = 0.0;
  uint8_t pol = 0;  // 0 = H, 1 = V
  Origin origin = Origin::kPair;
};

struct EventStream {
  std::string arm;
  std::vector<Event> events;  // sorted by t_ps

  uint64_t count(Origin o) const;
};

enum class PairStatistics { kThermal, kPoisson };

struct ArmSim {
  double eta_total = 1.0;      // survival probability incl. detector
  double noise_cps = 0.0;      // homogeneous Poisson background
  double dark_cps = 0.0;
  double jitter_fwhm_ps = 60.0;
};

struct SimConfig {
  uint64_t n_pulses = 0;
  uint64_t seed = 1;
  double rep_rate_hz = 416.7e6;
  double mu = 0.0;  // mean pairs per pulse in the selected channel pair
  PairStatistics statistics = PairStatistics::kThermal;
  ArmSim signal;
  ArmSim idler;
  double window_ps = 600.0;
  unsigned workers = 1;  // 0 = hardware concurrency

  double duration_s() const;
  double pulse_period_ps() const;
  void validate() const;
};

struct SimResult {
  EventStream signal;
  EventStream idler;
  double duration_s = 0.0;
  double pulse_period_ps = 0.0;
};

SimResult simulate_events(const SimConfig& config);

struct CoincidenceSummary {
  uint64_t pairs_total = 0;  // all coincidences in the prompt window
  uint64_t parallel = 0;
  uint64_t orthogonal = 0;
  uint64_t delayed = 0;      // same count with one-period delayed idler
  double ccr_hz = 0.0;
  double accidentals_hz = 0.0;  // delayed-window estimate
  double visibility = 0.0;
  double visibility_stderr = 0.0;
};

// Two-pointer sweep pairing events within +/- window/2; accidentals from a
// delayed-window copy offset by one pulse period.
CoincidenceSummary count_coincidences(const EventStream& signal,
                                      const EventStream& idler,
                                      double window_ps, double duration_s,
                                      double delay_ps);

// n-fold coincidences: for each event in the first stream, the product of
// event counts of every other stream inside the common window.
double nfold_coincidences(const std::vector<const EventStream*>& streams,
                          double window_ps, double duration_s);

// Convenience: simulate then count with the config's own window.
CoincidenceSummary run_summary(const SimConfig& config);

// Pure noise stream generator used by the n-fold studies.
EventStream noise_stream(double rate_cps, double duration_s, uint64_t seed,
                         const std::string& arm);

}  // namespace qcoex::mc

#endif  // QCOEX_MCSIM_HPP_
