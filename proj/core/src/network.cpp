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

#include "qcoex/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"

namespace qcoex::net {

void AttenuationTable::validate() const {
  if (wavelengths_nm.size() != db_per_km.size() || wavelengths_nm.size() < 2) {
    throw ConfigError("attenuation table needs >= 2 matched knots");
  }
  for (size_t i = 1; i < wavelengths_nm.size(); ++i) {
    if (wavelengths_nm[i] <= wavelengths_nm[i - 1]) {
      throw ConfigError("attenuation knots must be strictly increasing");
    }
  }
  for (double a : db_per_km) {
    if (!(a > 0.0)) throw ConfigError("attenuation values must be > 0");
  }
}

double AttenuationTable::at(double wavelength_nm) const {
  if (wavelength_nm < wavelengths_nm.front() ||
      wavelength_nm > wavelengths_nm.back()) {
    throw RangeError("wavelength " + std::to_string(wavelength_nm) +
                     " nm outside attenuation table support");
  }
  auto it = std::upper_bound(wavelengths_nm.begin(), wavelengths_nm.end(),
                             wavelength_nm);
  if (it == wavelengths_nm.end()) --it;
  size_t hi = static_cast<size_t>(it - wavelengths_nm.begin());
  if (hi == 0) hi = 1;
  size_t lo = hi - 1;
  double t = (wavelength_nm - wavelengths_nm[lo]) /
             (wavelengths_nm[hi] - wavelengths_nm[lo]);
  return db_per_km[lo] + t * (db_per_km[hi] - db_per_km[lo]);
}

AttenuationTable default_attenuation() {
  // Interior knots pin the default installed-link loss budget; the 1260 and
  // 1625 endpoints extend the O-band and L-band edges on the same slopes.
  return AttenuationTable{
      {1260.0, 1280.0, 1310.0, 1330.0, 1550.0, 1610.0, 1625.0},
      {0.392625, 0.367575, 0.33, 0.31, 0.19, 0.13850747019470297,
       0.12563433774337872}};
}

void FiberLink::validate() const {
  if (length_km < 0.0) throw ConfigError("link length must be >= 0");
  if (excess_loss_db < 0.0) throw ConfigError("excess loss must be >= 0");
  attenuation.validate();
}

double loss_db(const FiberLink& link, double wavelength_nm) {
  if (link.length_km == 0.0 && link.excess_loss_db == 0.0) return 0.0;
  return link.length_km * link.attenuation.at(wavelength_nm) +
         link.excess_loss_db;
}

double ClassicalWdmPlan::aggregate_launch_dbm() const {
  double mw = 0.0;
  for (const auto& ch : channels) mw += dbm_to_mw(ch.launch_dbm);
  return mw_to_dbm(mw);
}

ClassicalWdmPlan ClassicalWdmPlan::with_aggregate_dbm(double dbm) const {
  ClassicalWdmPlan out = *this;
  if (channels.empty()) return out;
  double shift = dbm - aggregate_launch_dbm();
  for (auto& ch : out.channels) ch.launch_dbm += shift;
  return out;
}

ClassicalWdmPlan default_wdm_plan(double aggregate_dbm) {
  ClassicalWdmPlan plan;
  plan.link_name = "metro47";
  double per_channel = aggregate_dbm - linear_to_db(11.0);
  for (int k = 0; k < 11; ++k) {
    plan.channels.push_back({1549.0 + 1.6 * k, per_channel});
  }
  return plan;
}

ReceivedPower received_power(const ClassicalWdmPlan& plan,
                             const FiberLink& link) {
  ReceivedPower out;
  double mw = 0.0;
  out.per_channel_dbm.reserve(plan.channels.size());
  for (const auto& ch : plan.channels) {
    double rx = ch.launch_dbm - loss_db(link, ch.wavelength_nm);
    out.per_channel_dbm.push_back(rx);
    mw += dbm_to_mw(rx);
  }
  out.aggregate_dbm = plan.channels.empty()
                          ? -std::numeric_limits<double>::infinity()
                          : mw_to_dbm(mw);
  return out;
}

SwitchState flipped(const SwitchState& s) {
  auto flip = [](Routing r) {
    return r == Routing::kLit ? Routing::kDark : Routing::kLit;
  };
  return SwitchState{flip(s.signal), flip(s.idler)};
}

void NetworkTopology::validate() const {
  lit_link.validate();
  dark_link.validate();
  if (lit_link.name == dark_link.name) {
    throw ConfigError("lit and dark links must be distinct");
  }
}

double ArmPath::total_loss_db(double wavelength_nm) const {
  double total = 0.0;
  for (const auto& link : links) total += loss_db(link, wavelength_nm);
  return total;
}

RoutedPaths route(const NetworkTopology& topo, const SwitchState& state) {
  topo.validate();
  auto arm = [&](Routing r) {
    ArmPath path;
    if (r == Routing::kLit) {
      path.links.push_back(topo.lit_link);
      path.coexistors = topo.classical_plan.channels;
    } else {
      path.links.push_back(topo.dark_link);
    }
    return path;
  };
  return RoutedPaths{arm(state.signal), arm(state.idler)};
}

NetworkTopology default_topology(double aggregate_dbm) {
  NetworkTopology topo;
  topo.lit_link =
      FiberLink{"metro47", 47.9, default_attenuation(), 3.893, true};
  topo.dark_link =
      FiberLink{"spool5", 5.4, default_attenuation(), 0.35, false};
  topo.classical_plan = default_wdm_plan(aggregate_dbm);
  return topo;
}

}  // namespace qcoex::net
