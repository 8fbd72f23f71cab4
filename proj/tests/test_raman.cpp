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
#include "qcoex/raman.hpp"

using namespace qcoex;

namespace {

net::FiberLink test_link(double km = 25.0, double excess = 0.0) {
  return net::FiberLink{"t", km, net::default_attenuation(), excess, false};
}

}  // namespace

TEST_CASE("gain density vanishes at zero offset and stays positive") {
  auto table = raman::default_table();
  CHECK(raman::gain_density(table, 0.0) == 0.0);
  for (double om = 0.5; om <= 59.5; om += 0.5) {
    CHECK(raman::gain_density(table, om) > 0.0);
  }
  CHECK_THROWS_AS(raman::gain_density(table, -1.0), RangeError);
  CHECK_THROWS_AS(raman::gain_density(table, 60.5), RangeError);
}

TEST_CASE("gain peak sits in the 13 THz main band") {
  auto table = raman::default_table();
  double best_om = 0.0, best = 0.0;
  for (double om = 0.1; om <= 59.9; om += 0.1) {
    double g = raman::gain_density(table, om);
    if (g > best) {
      best = g;
      best_om = om;
    }
  }
  CHECK(best_om > 12.0);
  CHECK(best_om < 15.0);
}

TEST_CASE("phonon occupation matches Bose-Einstein values") {
  CHECK(raman::phonon_occupation(40.0, 295.0) ==
        doctest::Approx(0.0014945130598261289).epsilon(1e-12));
  double n = raman::phonon_occupation(40.0, 295.0);
  CHECK((n + 1.0) / n == doctest::Approx(670.11425994252579).epsilon(1e-12));
  CHECK(raman::phonon_occupation(39.0, 295.0) /
            raman::phonon_occupation(47.0, 295.0) ==
        doctest::Approx(3.6794716369538434).epsilon(1e-12));
  CHECK_THROWS_AS(raman::phonon_occupation(0.0, 295.0), DomainError);
  CHECK_THROWS_AS(raman::phonon_occupation(-5.0, 295.0), DomainError);
  CHECK_THROWS_AS(raman::phonon_occupation(40.0, 0.0), DomainError);
}

TEST_CASE("phonon occupation rises with temperature") {
  CHECK(raman::phonon_occupation(13.0, 350.0) >
        raman::phonon_occupation(13.0, 295.0));
  CHECK(raman::phonon_occupation(13.0, 295.0) >
        raman::phonon_occupation(13.0, 200.0));
}

TEST_CASE("stokes exceeds anti-stokes by the detailed-balance factor") {
  auto table = raman::default_table();
  double as = raman::scattering_density(table, 40.0, raman::Side::kAntiStokes);
  double st = raman::scattering_density(table, 40.0, raman::Side::kStokes);
  double n = raman::phonon_occupation(40.0, table.temperature_k);
  CHECK(st / as == doctest::Approx((n + 1.0) / n).epsilon(1e-12));
}

TEST_CASE("effective length limits and continuity") {
  double aq = db_per_km_to_natural(0.33);
  double ac = db_per_km_to_natural(0.19);
  double L = 47.9;

  SUBCASE("equal attenuation limit") {
    CHECK(raman::effective_length_co(aq, aq, L) ==
          doctest::Approx(L * std::exp(-aq * L)).epsilon(1e-12));
  }
  SUBCASE("continuity across the small-difference branch") {
    double near = aq * (1.0 + 1e-9);
    double a = raman::effective_length_co(aq, near, L);
    double b = raman::effective_length_co(aq, aq, L);
    CHECK(std::abs(a - b) / b < 1e-6);
  }
  SUBCASE("counter-propagating length saturates at 1/(aq+ac)") {
    double counter = raman::effective_length_counter(aq, ac, L);
    CHECK(counter > raman::effective_length_co(aq, ac, L));
    CHECK(counter < 1.0 / (aq + ac));
    CHECK(counter == doctest::Approx((1.0 - std::exp(-(aq + ac) * L)) /
                                     (aq + ac))
                         .epsilon(1e-12));
  }
  SUBCASE("both shrink to zero with link length") {
    CHECK(raman::effective_length_co(aq, ac, 0.0) == 0.0);
    CHECK(raman::effective_length_counter(aq, ac, 0.0) == 0.0);
  }
}

TEST_CASE("sprs rate is exactly linear in launch power") {
  auto table = raman::default_table();
  auto link = test_link();
  net::ClassicalChannel ch1{1550.0, 0.0};
  net::ClassicalChannel ch2{1550.0, linear_to_db(2.0)};
  double r1 = raman::sprs_rate(table, ch1, 1310.0, 50.0, link);
  double r2 = raman::sprs_rate(table, ch2, 1310.0, 50.0, link);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r1 > 0.0);
}

TEST_CASE("sprs rate rejects non-anti-stokes geometry") {
  auto table = raman::default_table();
  auto link = test_link();
  CHECK_THROWS_AS(
      raman::sprs_rate(table, {1310.0, 0.0}, 1550.0, 50.0, link),
      DomainError);
}

TEST_CASE("anti-stokes spectral ordering around the pump") {
  auto table = raman::default_table();
  auto link = test_link();
  net::ClassicalChannel pump{1550.0, 0.0};
  double r1290 = raman::sprs_rate(table, pump, 1290.0, 50.0, link);
  double r1310 = raman::sprs_rate(table, pump, 1310.0, 50.0, link);
  double r1330 = raman::sprs_rate(table, pump, 1330.0, 50.0, link);
  double lo = r1290 / r1310;
  double hi = r1330 / r1310;
  CHECK(lo > 0.05);
  CHECK(lo < 0.2);
  CHECK(hi > 1.5);
  CHECK(hi < 2.5);
}

TEST_CASE("plan rate is the sum over channels") {
  auto table = raman::default_table();
  auto link = test_link();
  net::ClassicalWdmPlan plan = net::default_wdm_plan(10.0);
  double total = raman::sprs_rate_plan(table, plan, 1310.0, 50.0, link);
  double sum = 0.0;
  for (const auto& ch : plan.channels) {
    sum += raman::sprs_rate(table, ch, 1310.0, 50.0, link);
  }
  CHECK(total == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("counter-propagation raises the noise on a long span") {
  auto table = raman::default_table();
  auto link = test_link(47.9, 3.893);
  net::ClassicalChannel pump{1550.0, 10.0};
  double co = raman::sprs_rate(table, pump, 1310.0, 50.0, link,
                               net::Direction::kCo);
  double counter = raman::sprs_rate(table, pump, 1310.0, 50.0, link,
                                    net::Direction::kCounter);
  // backward scattering integrates over the full span without the pump and
  // probe decaying together, so it collects more photons here
  CHECK(counter > co);

  // on a very short span both directions converge
  auto stub = test_link(0.01, 0.0);
  double co_s = raman::sprs_rate(table, pump, 1310.0, 50.0, stub);
  double counter_s = raman::sprs_rate(table, pump, 1310.0, 50.0, stub,
                                      net::Direction::kCounter);
  CHECK(co_s == doctest::Approx(counter_s).epsilon(1e-3));
}

TEST_CASE("table JSON round-trip preserves every field") {
  auto table = raman::default_table();
  auto round = raman::table_from_json(raman::to_json(table));
  REQUIRE(round.modes.size() == table.modes.size());
  CHECK(round.temperature_k == table.temperature_k);
  CHECK(round.calibration_scale == table.calibration_scale);
  for (size_t i = 0; i < table.modes.size(); ++i) {
    CHECK(round.modes[i].center_thz == table.modes[i].center_thz);
    CHECK(round.modes[i].gaussian_fwhm_thz == table.modes[i].gaussian_fwhm_thz);
    CHECK(round.modes[i].lorentzian_fwhm_thz ==
          table.modes[i].lorentzian_fwhm_thz);
    CHECK(round.modes[i].amplitude == table.modes[i].amplitude);
  }
}

TEST_CASE("calibration reproduces a single datum exactly") {
  raman::RamanGainTable table = raman::default_table();
  table.calibration_scale = 1.0;  // start uncalibrated

  raman::Observation obs;
  obs.quantum_nm = 1313.0;
  obs.plan = net::default_wdm_plan(0.0);  // 1 mW aggregate
  obs.link = net::FiberLink{"metro47", 47.9, net::default_attenuation(),
                            3.893, true};
  obs.measured_cps = 474.2;

  auto fit = raman::calibrate(table, {obs});
  CHECK(raman::predicted_detector_cps(fit.table, obs) ==
        doctest::Approx(474.2).epsilon(1e-9));
  REQUIRE(fit.log_residuals.size() == 1);
  CHECK(std::abs(fit.log_residuals[0]) < 1e-9);
}

TEST_CASE("default table is calibrated to the 1313 nm datum") {
  raman::Observation obs;
  obs.quantum_nm = 1313.0;
  obs.plan = net::default_wdm_plan(0.0);
  obs.link = net::FiberLink{"metro47", 47.9, net::default_attenuation(),
                            3.893, true};
  CHECK(raman::predicted_detector_cps(raman::default_table(), obs) ==
        doctest::Approx(474.2).epsilon(1e-9));
}
