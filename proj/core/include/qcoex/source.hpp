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
// Pulsed SPDC pair source: joint spectrum, energy-conserving channel pairs,
// and spectral weights for channel carving.

#ifndef QCOEX_SOURCE_HPP_
#define QCOEX_SOURCE_HPP_

#include <vector>

namespace qcoex::src {

struct EppSource {
  double pump_nm = 1300.0;
  double rep_rate_hz = 416.7e6;
  double pulse_fwhm_ps = 80.0;
  double mu = 0.0;           // mean pairs per pulse in the selected pair
  double joint_fwhm_nm = 40.0;
  double phase_rad = 0.0;    // |Phi+> at 0
  bool flat_spectrum = false;

  void validate() const;
};

struct QuantumChannel {
  double center_nm = 1300.0;
  double bandwidth_ghz = 50.0;

  void validate() const;
};

struct ChannelPair {
  QuantumChannel signal;
  QuantumChannel idler;
};

// Energy conservation: |nu_s + nu_i - 2 nu_p| within one filter FWHM.
bool pair_conserves_energy(const ChannelPair& pair, double pump_nm);

// lambda_i = 1/(2/lambda_p - 1/lambda_s).
double conjugate_wavelength(double signal_nm, double pump_nm);

// Fraction of generated pairs landing in the pair's filters, from the
// signal-side Gaussian marginal. Returns the filter-width cap when the
// source's flat-spectrum toggle is set.
double spectral_weight(const EppSource& source, const ChannelPair& pair);

// Energy-conjugate pairs on a uniform frequency grid across [band_start,
// band_end] nm. Pairs are emitted once (signal on the short-wavelength side
// when the band straddles the degenerate point).
std::vector<ChannelPair> channel_grid(double band_start_nm, double band_end_nm,
                                      double spacing_ghz, double pump_nm);

}  // namespace qcoex::src

#endif  // QCOEX_SOURCE_HPP_
