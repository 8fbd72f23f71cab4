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
// Fiber links with wavelength-dependent loss, classical WDM launch plans,
// and 2x2-switch routing between lit and dark fibers.

#ifndef QCOEX_NETWORK_HPP_
#define QCOEX_NETWORK_HPP_

#include <string>
#include <utility>
#include <vector>

namespace qcoex::net {

// Piecewise-linear attenuation (dB/km) vs wavelength (nm). Knots must be
// strictly increasing in wavelength; queries outside the knot span throw.
struct AttenuationTable {
  std::vector<double> wavelengths_nm;
  std::vector<double> db_per_km;

  double at(double wavelength_nm) const;
  void validate() const;
};

// Default SMF attenuation: 0.33 dB/km at 1310 nm, 0.19 dB/km at 1550 nm,
// endpoints chosen to reproduce the default installed-link loss budget.
AttenuationTable default_attenuation();

struct FiberLink {
  std::string name;
  double length_km = 0.0;
  AttenuationTable attenuation = default_attenuation();
  double excess_loss_db = 0.0;
  bool installed = false;

  void validate() const;
};

// Total link loss at a wavelength: length * alpha(lambda) + excess.
double loss_db(const FiberLink& link, double wavelength_nm);

struct ClassicalChannel {
  double wavelength_nm = 0.0;
  double launch_dbm = 0.0;
};

enum class Direction { kCo, kCounter };

struct ClassicalWdmPlan {
  std::vector<ClassicalChannel> channels;
  std::string link_name;
  Direction direction = Direction::kCo;

  double aggregate_launch_dbm() const;
  // Returns a copy with every channel's launch power scaled so the aggregate
  // equals the requested dBm (equal per-channel offset).
  ClassicalWdmPlan with_aggregate_dbm(double dbm) const;
};

// Default 11-channel CW plan, 1549 nm to 1565 nm on a 1.6 nm pitch.
ClassicalWdmPlan default_wdm_plan(double aggregate_dbm);

struct ReceivedPower {
  std::vector<double> per_channel_dbm;
  double aggregate_dbm = 0.0;
};

ReceivedPower received_power(const ClassicalWdmPlan& plan,
                             const FiberLink& link);

enum class Routing { kLit, kDark };

struct SwitchState {
  Routing signal = Routing::kLit;
  Routing idler = Routing::kDark;
};

SwitchState flipped(const SwitchState& s);

struct NetworkTopology {
  FiberLink lit_link;
  FiberLink dark_link;
  ClassicalWdmPlan classical_plan;  // always rides the lit link

  void validate() const;
};

// One quantum arm's resolved path: the links it transits and the classical
// channels it coexists with on each link.
struct ArmPath {
  std::vector<FiberLink> links;
  std::vector<ClassicalChannel> coexistors;

  double total_loss_db(double wavelength_nm) const;
};

struct RoutedPaths {
  ArmPath signal;
  ArmPath idler;
};

RoutedPaths route(const NetworkTopology& topo, const SwitchState& state);

// Default network: 47.9 km installed metro link (excess 3.893 dB) and a
// 5.4 km spooled dark fiber (excess 0.35 dB).
NetworkTopology default_topology(double aggregate_dbm);

}  // namespace qcoex::net

#endif  // QCOEX_NETWORK_HPP_
