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

#include "qcoex/source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"

namespace qcoex::src {
namespace {

constexpr double kFwhmToSigma = 2.3548200450309493;  // 2*sqrt(2*ln 2)

// Filter width in nm for a frequency bandwidth at a center wavelength.
double filter_width_nm(double center_nm, double bandwidth_ghz) {
  return center_nm * center_nm * bandwidth_ghz / (kCNmThz * 1e3);
}

}  // namespace

void EppSource::validate() const {
  if (mu < 0.0) throw DomainError("mu must be >= 0");
  if (!(rep_rate_hz > 0.0)) throw DomainError("rep rate must be > 0");
  if (!(joint_fwhm_nm > 0.0)) throw DomainError("joint FWHM must be > 0");
  if (!(pump_nm > 0.0)) throw DomainError("pump wavelength must be > 0");
}

void QuantumChannel::validate() const {
  if (!(bandwidth_ghz > 0.0)) throw DomainError("bandwidth must be > 0");
  if (center_nm < 1260.0 || center_nm > 1360.0) {
    throw RangeError("quantum channel must lie in the O-band (1260-1360 nm)");
  }
}

double conjugate_wavelength(double signal_nm, double pump_nm) {
  double inv = 2.0 / pump_nm - 1.0 / signal_nm;
  if (!(inv > 0.0)) {
    throw DomainError("conjugate idler frequency is nonpositive");
  }
  return 1.0 / inv;
}

bool pair_conserves_energy(const ChannelPair& pair, double pump_nm) {
  double nu_s = nm_to_thz(pair.signal.center_nm);
  double nu_i = nm_to_thz(pair.idler.center_nm);
  double nu_p = nm_to_thz(pump_nm);
  double tol_thz =
      std::max(pair.signal.bandwidth_ghz, pair.idler.bandwidth_ghz) * 1e-3;
  return std::abs(nu_s + nu_i - 2.0 * nu_p) <= tol_thz;
}

double spectral_weight(const EppSource& source, const ChannelPair& pair) {
  pair.signal.validate();
  pair.idler.validate();
  double width =
      filter_width_nm(pair.signal.center_nm, pair.signal.bandwidth_ghz);
  double sigma = source.joint_fwhm_nm / kFwhmToSigma;
  if (source.flat_spectrum) {
    // Peak density times the filter width: constant across channels.
    double peak = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    return std::min(1.0, width * peak);
  }
  double lo = pair.signal.center_nm - 0.5 * width;
  double hi = pair.signal.center_nm + 0.5 * width;
  double z_lo = (lo - source.pump_nm) / (sigma * std::numbers::sqrt2);
  double z_hi = (hi - source.pump_nm) / (sigma * std::numbers::sqrt2);
  return 0.5 * (std::erf(z_hi) - std::erf(z_lo));
}

std::vector<ChannelPair> channel_grid(double band_start_nm, double band_end_nm,
                                      double spacing_ghz, double pump_nm) {
  if (band_start_nm > band_end_nm) std::swap(band_start_nm, band_end_nm);
  if (!(spacing_ghz > 0.0)) throw DomainError("grid spacing must be > 0");
  if (band_start_nm == band_end_nm) return {};

  double nu_lo = nm_to_thz(band_end_nm);
  double nu_hi = nm_to_thz(band_start_nm);
  double nu_p = nm_to_thz(pump_nm);
  double step = spacing_ghz * 1e-3;

  std::vector<double> grid_nu;
  for (double nu = nu_lo; nu <= nu_hi + 1e-12; nu += step) grid_nu.push_back(nu);

  // Emit each pair once: use the high-frequency (short-wavelength) side as
  // the signal. If the band sits entirely below the pump frequency, take the
  // band channels themselves as idlers and conjugate upward.
  bool any_signal_side = std::any_of(grid_nu.begin(), grid_nu.end(),
                                     [&](double nu) { return nu >= nu_p; });
  std::vector<ChannelPair> pairs;
  for (double nu : grid_nu) {
    double signal_nm;
    if (any_signal_side) {
      if (nu < nu_p) continue;
      signal_nm = thz_to_nm(nu);
    } else {
      signal_nm = conjugate_wavelength(thz_to_nm(nu), pump_nm);
    }
    double idler_nm = conjugate_wavelength(signal_nm, pump_nm);
    ChannelPair pair{{signal_nm, spacing_ghz}, {idler_nm, spacing_ghz}};
    if (pair.signal.center_nm < 1260.0 || pair.signal.center_nm > 1360.0 ||
        pair.idler.center_nm < 1260.0 || pair.idler.center_nm > 1360.0) {
      continue;  // conjugate fell outside the O-band
    }
    pairs.push_back(pair);
  }
  return pairs;
}

}  // namespace qcoex::src
