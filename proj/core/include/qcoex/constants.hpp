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

#ifndef QCOEX_CONSTANTS_HPP_
#define QCOEX_CONSTANTS_HPP_

#include <cmath>
#include <numbers>

namespace qcoex {

// Speed of light in nm*THz (equivalently nm*GHz*1e-3 * 1e3).
inline constexpr double kCNmThz = 299792.458;

// h/kB in K/THz (CODATA 2018, exact SI): 4.799243073366221e-11 K*s * 1e12.
inline constexpr double kHOverKbKPerThz = 47.99243073366221;

// cm^-1 to THz.
inline constexpr double kCm1Thz = 0.0299792458;

inline double nm_to_thz(double lambda_nm) { return kCNmThz / lambda_nm; }
inline double thz_to_nm(double nu_thz) { return kCNmThz / nu_thz; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

// dB/km to natural (1/km).
inline double db_per_km_to_natural(double db) {
  return db * std::numbers::ln10 / 10.0;
}

}  // namespace qcoex

#endif  // QCOEX_CONSTANTS_HPP_
