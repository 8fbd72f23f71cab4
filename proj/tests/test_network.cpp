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

#include <cmath>

#include <doctest.h>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"
#include "qcoex/network.hpp"

using namespace qcoex;

TEST_CASE("default attenuation knots and interpolation") {
  auto att = net::default_attenuation();
  att.validate();
  CHECK(att.at(1310.0) == 0.33);
  CHECK(att.at(1550.0) == 0.19);
  CHECK(att.at(1330.0) == 0.31);
  // halfway between 1310 and 1330
  CHECK(att.at(1320.0) == doctest::Approx(0.32).epsilon(1e-12));
  CHECK_THROWS_AS(att.at(1200.0), RangeError);
  CHECK_THROWS_AS(att.at(1700.0), RangeError);
}

TEST_CASE("installed link reproduces the measured loss budget") {
  net::FiberLink link{"metro47", 47.9, net::default_attenuation(), 3.893,
                      true};
  CHECK(net::loss_db(link, 1290.0) == doctest::Approx(20.9).epsilon(1e-4));
  CHECK(net::loss_db(link, 1310.0) == doctest::Approx(19.7).epsilon(1e-9));
}

TEST_CASE("empty link is lossless") {
  net::FiberLink link{"none", 0.0, net::default_attenuation(), 0.0, false};
  CHECK(net::loss_db(link, 1310.0) == 0.0);
}

TEST_CASE("default WDM plan splits power equally over 11 channels") {
  auto plan = net::default_wdm_plan(18.1);
  REQUIRE(plan.channels.size() == 11);
  CHECK(plan.aggregate_launch_dbm() == doctest::Approx(18.1).epsilon(1e-12));
  for (const auto& ch : plan.channels) {
    CHECK(ch.launch_dbm == plan.channels.front().launch_dbm);
    CHECK(ch.wavelength_nm >= 1549.0);
    CHECK(ch.wavelength_nm <= 1565.0 + 1e-9);
  }
}

TEST_CASE("with_aggregate_dbm rescales to the target") {
  auto plan = net::default_wdm_plan(14.0).with_aggregate_dbm(18.1);
  CHECK(plan.aggregate_launch_dbm() == doctest::Approx(18.1).epsilon(1e-12));
}

TEST_CASE("received power matches the field measurements") {
  net::FiberLink link{"metro47", 47.9, net::default_attenuation(), 3.893,
                      true};
  auto rx14 = net::received_power(net::default_wdm_plan(14.0), link);
  auto rx18 = net::received_power(net::default_wdm_plan(18.1), link);
  CHECK(rx14.aggregate_dbm == doctest::Approx(1.3).epsilon(1e-6));
  CHECK(rx18.aggregate_dbm == doctest::Approx(5.4).epsilon(1e-6));
}

TEST_CASE("received aggregate equals the sum of per-channel powers") {
  net::FiberLink link{"metro47", 47.9, net::default_attenuation(), 3.893,
                      true};
  auto rx = net::received_power(net::default_wdm_plan(16.2), link);
  double mw = 0.0;
  for (double d : rx.per_channel_dbm) mw += dbm_to_mw(d);
  CHECK(rx.aggregate_dbm == doctest::Approx(mw_to_dbm(mw)).epsilon(1e-9));
}

TEST_CASE("switch flip is an involution") {
  net::SwitchState s{net::Routing::kLit, net::Routing::kDark};
  auto twice = net::flipped(net::flipped(s));
  CHECK(twice.signal == s.signal);
  CHECK(twice.idler == s.idler);
  auto once = net::flipped(s);
  CHECK(once.signal == net::Routing::kDark);
  CHECK(once.idler == net::Routing::kLit);
}

TEST_CASE("routing assigns coexistors only to the lit arm") {
  auto topo = net::default_topology(18.1);
  auto paths =
      net::route(topo, {net::Routing::kLit, net::Routing::kDark});
  REQUIRE(paths.signal.links.size() == 1);
  CHECK(paths.signal.links[0].name == "metro47");
  CHECK(paths.signal.coexistors.size() == 11);
  CHECK(paths.idler.links[0].name == "spool5");
  CHECK(paths.idler.coexistors.empty());
}

TEST_CASE("topology rejects duplicate link names") {
  auto topo = net::default_topology(14.0);
  topo.dark_link.name = topo.lit_link.name;
  CHECK_THROWS_AS(
      net::route(topo, {net::Routing::kLit, net::Routing::kDark}),
      ConfigError);
}

TEST_CASE("arm path loss accumulates across links") {
  net::FiberLink a{"a", 10.0, net::default_attenuation(), 1.0, false};
  net::FiberLink b{"b", 5.0, net::default_attenuation(), 0.5, false};
  net::ArmPath path{{a, b}, {}};
  CHECK(path.total_loss_db(1310.0) ==
        doctest::Approx(10.0 * 0.33 + 1.0 + 5.0 * 0.33 + 0.5).epsilon(1e-12));
}
