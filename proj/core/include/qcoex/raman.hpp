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
// Spontaneous Raman scattering: relative gain spectrum from a multi-mode
// intermediate-broadening fit, phonon occupation, and absolute noise rates
// at a quantum receiver.

#ifndef QCOEX_RAMAN_HPP_
#define QCOEX_RAMAN_HPP_

#include <string>
#include <vector>

#include "qcoex/network.hpp"

namespace qcoex::raman {

struct VibrationalMode {
  double center_thz = 0.0;     // frequency offset of the mode center
  double gaussian_fwhm_thz = 0.0;
  double lorentzian_fwhm_thz = 0.0;
  double amplitude = 0.0;      // relative weight

  void validate() const;
};

struct RamanGainTable {
  std::vector<VibrationalMode> modes;
  double temperature_k = 295.0;
  // photons/s per mW per GHz per km per unit relative scattering density.
  double calibration_scale = 1.0;

  void validate() const;
};

// Default table: 14 modes, scale calibrated against the 1313 nm noise datum
// through the default installed link.
RamanGainTable default_table();

// JSON round-trip: {temperature_K, calibration_scale,
//                   modes: [{center_THz, gw_THz, lw_THz, amp}]}.
std::string to_json(const RamanGainTable& table);
RamanGainTable table_from_json(const std::string& json_text);
RamanGainTable load_table(const std::string& path);

inline constexpr double kMaxOffsetThz = 60.0;

// Relative Raman gain at a frequency offset (THz), sum of antisymmetrized
// pseudo-Voigt mode profiles. Valid for offset in [0, 60] THz.
double gain_density(const RamanGainTable& table, double offset_thz);

// Bose-Einstein occupation n = 1/(exp(h*Omega/kB*T) - 1).
double phonon_occupation(double offset_thz, double temperature_k);

enum class Side { kAntiStokes, kStokes };

// gain * n (anti-Stokes) or gain * (n+1) (Stokes).
double scattering_density(const RamanGainTable& table, double offset_thz,
                          Side side);

// Effective interaction length (km) for forward scattering from a pump at
// alpha_c into a probe at alpha_q (natural units per km) over L km.
double effective_length_co(double alpha_q_per_km, double alpha_c_per_km,
                           double length_km);
double effective_length_counter(double alpha_q_per_km, double alpha_c_per_km,
                                double length_km);

// Anti-Stokes spRS photon rate (photons/s) at the fiber output within
// filter_bandwidth_ghz around quantum_nm, from one classical channel.
double sprs_rate(const RamanGainTable& table,
                 const net::ClassicalChannel& classical, double quantum_nm,
                 double filter_bandwidth_ghz, const net::FiberLink& link,
                 net::Direction direction = net::Direction::kCo);

// Sum of sprs_rate over every channel in the plan.
double sprs_rate_plan(const RamanGainTable& table,
                      const net::ClassicalWdmPlan& plan, double quantum_nm,
                      double filter_bandwidth_ghz, const net::FiberLink& link,
                      net::Direction direction = net::Direction::kCo);

// One measured detector-referred noise rate. receiver_insertion_db is loss
// between fiber output and detector (filters); detector_efficiency applies
// after that.
struct Observation {
  double quantum_nm = 0.0;
  net::ClassicalWdmPlan plan;
  double filter_bandwidth_ghz = 50.0;
  net::FiberLink link;
  double measured_cps = 0.0;
  double detector_efficiency = 0.92;
  double receiver_insertion_db = 3.0;
};

struct CalibrationResult {
  RamanGainTable table;
  std::vector<double> log_residuals;  // ln(predicted/measured) per datum
};

// Fits calibration_scale by least squares on log residuals.
CalibrationResult calibrate(const RamanGainTable& table,
                            const std::vector<Observation>& observations);

// Predicted detector-referred rate for one observation's geometry.
double predicted_detector_cps(const RamanGainTable& table,
                              const Observation& obs);

}  // namespace qcoex::raman

#endif  // QCOEX_RAMAN_HPP_
