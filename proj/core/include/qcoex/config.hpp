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
// JSON run configuration: defaults, overrides, and a stable hash of the
// resolved document for report provenance.

#ifndef QCOEX_CONFIG_HPP_
#define QCOEX_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcoex/network.hpp"
#include "qcoex/planner.hpp"
#include "qcoex/raman.hpp"
#include "qcoex/rates.hpp"
#include "qcoex/source.hpp"

namespace qcoex::cfg {

struct ArmChannel {
  double channel_nm = 1300.0;
  double bandwidth_ghz = 50.0;
  double extra_loss_db = 0.0;
};

struct SpectrumConfig {
  std::vector<double> pumps_nm = {1530.0, 1550.0, 1565.0, 1580.0, 1617.0};
  double launch_dbm = 2.05;
  double lambda_min_nm = 1282.0;
  double lambda_max_nm = 1336.0;
  double step_nm = 2.0;
  double length_km = 25.0;
  double excess_db = 0.0;
  double bandwidth_ghz = 50.0;
};

struct SweepConfig {
  double mu_min = 1e-3;
  double mu_max = 0.2;
  int points = 20;
};

struct PlannerConfig {
  double band_start_nm = 1282.0;
  double band_end_nm = 1318.0;
  double spacing_ghz = 50.0;
  std::string objective = "max_visibility";
  plan::PlanConstraints constraints;
  bool allow_both_lit = false;
  double power_dbm = 0.0;  // resolved: defaults to the highest power setting
};

struct TomoConfig {
  double dark_fidelity = 0.977;
  double integration_s = 60.0;
  double counts_per_setting = 0.0;  // 0: analytic only, no reconstruction
  double noise_floor = 0.0;
  bool simulate = false;
};

struct McConfig {
  uint64_t n_pulses = 1000000;
  unsigned workers = 1;
  std::string statistics = "thermal";
  double power_dbm = 0.0;  // resolved like PlannerConfig::power_dbm
  bool dump_events = false;
};

struct RunConfig {
  int schema_version = 1;
  raman::RamanGainTable table;  // post calibration/env resolution
  net::FiberLink lit_link;
  net::FiberLink dark_link;
  std::vector<double> classical_powers_dbm;
  std::vector<double> plan_channels_nm;
  src::EppSource source;
  rates::DetectorModel detector;
  rates::CoincidenceConfig coincidence;
  double receiver_insertion_db = 3.0;
  ArmChannel signal_arm;
  ArmChannel idler_arm;
  net::SwitchState routing;
  bool rates_scan_band = false;
  SpectrumConfig spectrum;
  SweepConfig sweep;
  PlannerConfig planner;
  TomoConfig tomo;
  McConfig mc;

  std::string canonical_json;  // resolved config, sorted keys
  std::string config_hash;     // FNV-1a 64 of canonical_json, hex

  // Classical plan at a given aggregate power, equal per-channel split.
  net::ClassicalWdmPlan plan_at(double aggregate_dbm) const;
  net::NetworkTopology topology_at(double aggregate_dbm) const;
};

// Parses and resolves a config document over the built-in defaults.
// QCOEX_TABLE, when set, overrides the Raman table with the file it names.
RunConfig config_from_json_text(const std::string& text);
RunConfig load_config(const std::string& path);

uint64_t fnv1a64(std::string_view s);

}  // namespace qcoex::cfg

#endif  // QCOEX_CONFIG_HPP_
