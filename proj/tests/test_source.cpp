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

#include "qcoex/errors.hpp"
#include "qcoex/source.hpp"

using namespace qcoex;

TEST_CASE("conjugate wavelengths around the 1300 nm pump") {
  CHECK(src::conjugate_wavelength(1287.0, 1300.0) ==
        doctest::Approx(1313.2653061224489).epsilon(1e-12));
  CHECK(src::conjugate_wavelength(1282.0, 1300.0) ==
        doctest::Approx(1318.5126582278481).epsilon(1e-12));
  // degenerate point maps to itself
  CHECK(src::conjugate_wavelength(1300.0, 1300.0) ==
        doctest::Approx(1300.0).epsilon(1e-12));
}

TEST_CASE("conjugation is an involution") {
  for (double s = 1262.0; s < 1300.0; s += 3.7) {
    double i = src::conjugate_wavelength(s, 1300.0);
    CHECK(src::conjugate_wavelength(i, 1300.0) ==
          doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("energy conservation accepts conjugates and rejects detuning") {
  src::ChannelPair good{{1287.0, 50.0},
                        {src::conjugate_wavelength(1287.0, 1300.0), 50.0}};
  CHECK(src::pair_conserves_energy(good, 1300.0));

  src::ChannelPair bad{{1287.0, 50.0}, {1320.0, 50.0}};
  CHECK_FALSE(src::pair_conserves_energy(bad, 1300.0));
}

TEST_CASE("channel validation enforces the O-band") {
  src::QuantumChannel low{1200.0, 50.0};
  src::QuantumChannel high{1400.0, 50.0};
  src::QuantumChannel mid{1310.0, 50.0};
  CHECK_THROWS_AS(low.validate(), RangeError);
  CHECK_THROWS_AS(high.validate(), RangeError);
  CHECK_NOTHROW(mid.validate());
}

TEST_CASE("spectral weight is a fraction and shrinks off-center") {
  src::EppSource source;
  source.mu = 0.01;
  auto pair_at = [](double s_nm) {
    return src::ChannelPair{{s_nm, 50.0},
                            {src::conjugate_wavelength(s_nm, 1300.0), 50.0}};
  };
  double center = src::spectral_weight(source, pair_at(1300.0));
  double near = src::spectral_weight(source, pair_at(1295.0));
  double far = src::spectral_weight(source, pair_at(1270.0));
  CHECK(center > 0.0);
  CHECK(center <= 1.0);
  CHECK(center > near);
  CHECK(near > far);
  CHECK(far > 0.0);
}

TEST_CASE("flat spectrum weight is independent of detuning") {
  src::EppSource source;
  source.flat_spectrum = true;
  auto pair_at = [](double s_nm) {
    return src::ChannelPair{{s_nm, 50.0},
                            {src::conjugate_wavelength(s_nm, 1300.0), 50.0}};
  };
  double a = src::spectral_weight(source, pair_at(1287.0));
  double b = src::spectral_weight(source, pair_at(1295.0));
  // flat density: only the filter width (in nm, so ~lambda^2) matters
  CHECK(a == doctest::Approx(b).epsilon(0.02));
  CHECK(a > 0.0);
  CHECK(a <= 1.0);

  src::EppSource gauss;
  double g = src::spectral_weight(gauss, pair_at(1287.0));
  CHECK(a > g);  // the Gaussian marginal suppresses detuned pairs
}

TEST_CASE("channel grid yields energy-conserving in-band pairs") {
  auto grid = src::channel_grid(1282.0, 1318.0, 50.0, 1300.0);
  CHECK(grid.size() > 10);
  for (const auto& pair : grid) {
    CHECK(src::pair_conserves_energy(pair, 1300.0));
    // signal on the short-wavelength side
    CHECK(pair.signal.center_nm < pair.idler.center_nm);
    CHECK(pair.signal.center_nm >= 1282.0 - 1.0);
    CHECK(pair.signal.center_nm <= 1318.0 + 1.0);
    CHECK_NOTHROW(pair.signal.validate());
    CHECK_NOTHROW(pair.idler.validate());
  }
}

TEST_CASE("source validation rejects nonsense") {
  src::EppSource bad;
  bad.mu = -0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  src::EppSource bad2;
  bad2.rep_rate_hz = 0.0;
  CHECK_THROWS_AS(bad2.validate(), DomainError);
}
