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

#include "qcoex/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"

using nlohmann::json;

namespace qcoex::cfg {
namespace {

json default_json() {
  json j;
  j["schema_version"] = 1;
  j["raman_table"] = nullptr;  // null: embedded default
  j["calibration"] = nullptr;  // {"data": [{"quantum_nm", "cps_per_mw"}]}
  j["network"] = {
      {"lit",
       {{"name", "metro47"}, {"length_km", 47.9}, {"excess_db", 3.893},
        {"installed", true}}},
      {"dark",
       {{"name", "spool5"}, {"length_km", 5.4}, {"excess_db", 0.35},
        {"installed", false}}}};
  json channels = json::array();
  for (int k = 0; k < 11; ++k) channels.push_back(1549.0 + 1.6 * k);
  j["classical"] = {{"powers_dbm", {14.0, 16.2, 18.1}},
                    {"channels_nm", channels}};
  j["source"] = {{"pump_nm", 1300.0},       {"rep_rate_hz", 416.7e6},
                 {"pulse_fwhm_ps", 80.0},   {"joint_fwhm_nm", 40.0},
                 {"mu", 0.005},             {"flat_spectrum", false}};
  j["detector"] = {
      {"efficiency", 0.92}, {"dark_cps", 100.0}, {"jitter_fwhm_ps", 60.0}};
  j["coincidence"] = {{"window_ps", 600.0}};
  j["receiver"] = {{"filter_insertion_db", 3.0}};
  j["arms"] = {
      {"signal",
       {{"channel_nm", 1287.0}, {"bandwidth_ghz", 50.0},
        {"extra_loss_db", 0.0}}},
      {"idler",
       {{"channel_nm", 1313.0}, {"bandwidth_ghz", 50.0},
        {"extra_loss_db", 0.0}}},
      {"routing", "signal_lit"}};
  j["spectrum"] = {{"pumps_nm", {1530.0, 1550.0, 1565.0, 1580.0, 1617.0}},
                   {"launch_dbm", 2.05},
                   {"lambda_min_nm", 1282.0},
                   {"lambda_max_nm", 1336.0},
                   {"step_nm", 2.0},
                   {"length_km", 25.0},
                   {"excess_db", 0.0},
                   {"bandwidth_ghz", 50.0}};
  j["rates"] = {{"scan_band", false}};
  j["sweep"] = {{"mu_min", 1e-3}, {"mu_max", 0.2}, {"points", 20}};
  j["planner"] = {{"band_nm", {1282.0, 1318.0}},
                  {"spacing_ghz", 50.0},
                  {"objective", "max_visibility"},
                  {"min_visibility", 0.7071067811865476},
                  {"min_ccr_ccps", 0.0},
                  {"max_mu", 0.2},
                  {"allow_both_lit", false},
                  {"power_dbm", nullptr}};
  j["tomo"] = {{"dark_fidelity", 0.977},
               {"integration_s", 60.0},
               {"counts_per_setting", 0.0},
               {"noise_floor", 0.0},
               {"simulate", false}};
  j["mc"] = {{"n_pulses", 1000000},
             {"workers", 1},
             {"statistics", "thermal"},
             {"power_dbm", nullptr},
             {"dump_events", false}};
  return j;
}

net::SwitchState routing_from_string(const std::string& s) {
  if (s == "signal_lit") {
    return {net::Routing::kLit, net::Routing::kDark};
  }
  if (s == "idler_lit") {
    return {net::Routing::kDark, net::Routing::kLit};
  }
  if (s == "both_lit") {
    return {net::Routing::kLit, net::Routing::kLit};
  }
  throw ConfigError("unknown routing '" + s +
                    "' (signal_lit | idler_lit | both_lit)");
}

net::FiberLink link_from_json(const json& j) {
  net::FiberLink link;
  link.name = j.at("name").get<std::string>();
  link.length_km = j.at("length_km").get<double>();
  link.excess_loss_db = j.at("excess_db").get<double>();
  link.installed = j.value("installed", false);
  if (j.contains("attenuation") && !j["attenuation"].is_null()) {
    net::AttenuationTable att;
    for (const auto& knot : j["attenuation"]) {
      att.wavelengths_nm.push_back(knot.at(0).get<double>());
      att.db_per_km.push_back(knot.at(1).get<double>());
    }
    link.attenuation = att;
  }
  link.validate();
  return link;
}

raman::RamanGainTable resolve_table(const json& j) {
  if (const char* env = std::getenv("QCOEX_TABLE"); env && *env) {
    return raman::load_table(env);
  }
  const json& ref = j.at("raman_table");
  if (ref.is_null()) return raman::default_table();
  if (ref.is_string()) return raman::load_table(ref.get<std::string>());
  return raman::table_from_json(ref.dump());
}

RunConfig from_resolved(const json& j) {
  RunConfig c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != 1) {
    throw ConfigError("unsupported schema_version " +
                      std::to_string(c.schema_version));
  }

  c.table = resolve_table(j);
  if (j.contains("temperature_K") && !j["temperature_K"].is_null()) {
    c.table.temperature_k = j["temperature_K"].get<double>();
  }
  c.lit_link = link_from_json(j.at("network").at("lit"));
  c.dark_link = link_from_json(j.at("network").at("dark"));

  for (const auto& p : j.at("classical").at("powers_dbm")) {
    c.classical_powers_dbm.push_back(p.get<double>());
  }
  for (const auto& ch : j.at("classical").at("channels_nm")) {
    c.plan_channels_nm.push_back(ch.get<double>());
  }

  const json& js = j.at("source");
  c.source.pump_nm = js.at("pump_nm").get<double>();
  c.source.rep_rate_hz = js.at("rep_rate_hz").get<double>();
  c.source.pulse_fwhm_ps = js.at("pulse_fwhm_ps").get<double>();
  c.source.joint_fwhm_nm = js.at("joint_fwhm_nm").get<double>();
  c.source.mu = js.at("mu").get<double>();
  c.source.flat_spectrum = js.at("flat_spectrum").get<bool>();
  c.source.validate();

  const json& jd = j.at("detector");
  c.detector.efficiency = jd.at("efficiency").get<double>();
  c.detector.dark_cps = jd.at("dark_cps").get<double>();
  c.detector.jitter_fwhm_ps = jd.at("jitter_fwhm_ps").get<double>();
  c.detector.validate();

  c.coincidence.window_ps = j.at("coincidence").at("window_ps").get<double>();
  c.coincidence.validate();
  c.receiver_insertion_db =
      j.at("receiver").at("filter_insertion_db").get<double>();

  auto arm_from = [](const json& ja) {
    return ArmChannel{ja.at("channel_nm").get<double>(),
                      ja.at("bandwidth_ghz").get<double>(),
                      ja.at("extra_loss_db").get<double>()};
  };
  c.signal_arm = arm_from(j.at("arms").at("signal"));
  c.idler_arm = arm_from(j.at("arms").at("idler"));
  c.routing =
      routing_from_string(j.at("arms").at("routing").get<std::string>());

  c.rates_scan_band = j.at("rates").at("scan_band").get<bool>();

  const json& jsp = j.at("spectrum");
  c.spectrum.pumps_nm.clear();
  for (const auto& p : jsp.at("pumps_nm")) {
    c.spectrum.pumps_nm.push_back(p.get<double>());
  }
  c.spectrum.launch_dbm = jsp.at("launch_dbm").get<double>();
  c.spectrum.lambda_min_nm = jsp.at("lambda_min_nm").get<double>();
  c.spectrum.lambda_max_nm = jsp.at("lambda_max_nm").get<double>();
  c.spectrum.step_nm = jsp.at("step_nm").get<double>();
  c.spectrum.length_km = jsp.at("length_km").get<double>();
  c.spectrum.excess_db = jsp.at("excess_db").get<double>();
  c.spectrum.bandwidth_ghz = jsp.at("bandwidth_ghz").get<double>();

  const json& jsw = j.at("sweep");
  c.sweep.mu_min = jsw.at("mu_min").get<double>();
  c.sweep.mu_max = jsw.at("mu_max").get<double>();
  c.sweep.points = jsw.at("points").get<int>();

  const json& jp = j.at("planner");
  c.planner.band_start_nm = jp.at("band_nm").at(0).get<double>();
  c.planner.band_end_nm = jp.at("band_nm").at(1).get<double>();
  c.planner.spacing_ghz = jp.at("spacing_ghz").get<double>();
  c.planner.objective = jp.at("objective").get<std::string>();
  c.planner.constraints.min_visibility = jp.at("min_visibility").get<double>();
  c.planner.constraints.min_ccr_ccps = jp.at("min_ccr_ccps").get<double>();
  c.planner.constraints.max_mu = jp.at("max_mu").get<double>();
  c.planner.allow_both_lit = jp.at("allow_both_lit").get<bool>();

  double max_power = c.classical_powers_dbm.empty()
                         ? 0.0
                         : *std::max_element(c.classical_powers_dbm.begin(),
                                             c.classical_powers_dbm.end());
  c.planner.power_dbm = jp.at("power_dbm").is_null()
                            ? max_power
                            : jp.at("power_dbm").get<double>();

  const json& jt = j.at("tomo");
  c.tomo.dark_fidelity = jt.at("dark_fidelity").get<double>();
  c.tomo.integration_s = jt.at("integration_s").get<double>();
  c.tomo.counts_per_setting = jt.at("counts_per_setting").get<double>();
  c.tomo.noise_floor = jt.at("noise_floor").get<double>();
  c.tomo.simulate = jt.at("simulate").get<bool>();

  const json& jm = j.at("mc");
  c.mc.n_pulses = jm.at("n_pulses").get<uint64_t>();
  c.mc.workers = jm.at("workers").get<unsigned>();
  c.mc.statistics = jm.at("statistics").get<std::string>();
  if (c.mc.statistics != "thermal" && c.mc.statistics != "poisson") {
    throw ConfigError("mc.statistics must be 'thermal' or 'poisson'");
  }
  c.mc.power_dbm = jm.at("power_dbm").is_null()
                       ? max_power
                       : jm.at("power_dbm").get<double>();
  c.mc.dump_events = jm.at("dump_events").get<bool>();

  // Optional calibration against measured detector-referred cps/mW data.
  const json& jc = j.at("calibration");
  if (!jc.is_null()) {
    std::vector<raman::Observation> obs;
    for (const auto& datum : jc.at("data")) {
      raman::Observation o;
      o.quantum_nm = datum.at("quantum_nm").get<double>();
      o.measured_cps = datum.at("cps_per_mw").get<double>();
      o.plan = c.plan_at(0.0);  // 0 dBm aggregate = 1 mW
      o.filter_bandwidth_ghz = datum.value("bandwidth_ghz", 50.0);
      o.link = c.lit_link;
      o.detector_efficiency = c.detector.efficiency;
      o.receiver_insertion_db = c.receiver_insertion_db;
      obs.push_back(std::move(o));
    }
    c.table = raman::calibrate(c.table, obs).table;
  }
  c.table.validate();
  return c;
}

}  // namespace

net::ClassicalWdmPlan RunConfig::plan_at(double aggregate_dbm) const {
  net::ClassicalWdmPlan plan;
  plan.link_name = lit_link.name;
  if (plan_channels_nm.empty()) return plan;
  double per_channel =
      aggregate_dbm -
      linear_to_db(static_cast<double>(plan_channels_nm.size()));
  for (double nm : plan_channels_nm) {
    plan.channels.push_back({nm, per_channel});
  }
  return plan;
}

net::NetworkTopology RunConfig::topology_at(double aggregate_dbm) const {
  net::NetworkTopology topo;
  topo.lit_link = lit_link;
  topo.dark_link = dark_link;
  topo.classical_plan = plan_at(aggregate_dbm);
  return topo;
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

RunConfig config_from_json_text(const std::string& text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
  json resolved = default_json();
  try {
    resolved.merge_patch(user);
    RunConfig c = from_resolved(resolved);
    c.canonical_json = resolved.dump(2);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(c.canonical_json)));
    c.config_hash = buf;
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

}  // namespace qcoex::cfg
