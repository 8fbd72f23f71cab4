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
// Analytic singles/coincidence/visibility predictions for one source,
// network, and noise configuration.

#ifndef QCOEX_RATES_HPP_
#define QCOEX_RATES_HPP_

#include <vector>

#include "qcoex/source.hpp"

namespace qcoex::rates {

struct DetectorModel {
  double efficiency = 0.92;
  double dark_cps = 100.0;
  double jitter_fwhm_ps = 60.0;

  void validate() const;
};

struct CoincidenceConfig {
  double window_ps = 600.0;

  void validate() const;
};

// One receiver arm. noise_cps is the incoherent background at the detector
// input (after any receiver filtering), before detector efficiency; loss_db
// is the end-to-end pair-photon loss excluding detector efficiency.
struct ArmConfig {
  double loss_db = 0.0;
  DetectorModel detector;
  double noise_cps = 0.0;
};

struct RatePrediction {
  double singles_signal = 0.0;        // cps
  double singles_idler = 0.0;         // cps
  double true_coincidences = 0.0;     // ccps
  double accidentals = 0.0;           // ccps
  double multipair_orthogonal = 0.0;  // ccps
  double visibility_hv = 0.0;
  double car = 0.0;
  double mu_effective = 0.0;

  double total_ccr() const {
    return true_coincidences + 2.0 * multipair_orthogonal + 2.0 * accidentals;
  }
};

// R*mu_eff*eta_total + noise*eta_det + dark, mu_eff = mu*pair_weight.
double singles_rate(double arm_loss_db, const DetectorModel& detector,
                    double noise_cps, const src::EppSource& source,
                    double pair_weight);

RatePrediction coincidence_rates(const src::EppSource& source,
                                 double pair_weight, const ArmConfig& signal,
                                 const ArmConfig& idler,
                                 const CoincidenceConfig& cc);

struct SweepPoint {
  double mu = 0.0;
  double ccr_ccps = 0.0;
  double visibility = 0.0;
  double car = 0.0;
  double accidentals_ccps = 0.0;
};

// Logarithmic mu scan; CCR is monotone increasing in mu.
std::vector<SweepPoint> visibility_vs_ccr_sweep(
    const src::EppSource& source, double pair_weight, const ArmConfig& signal,
    const ArmConfig& idler, const CoincidenceConfig& cc, double mu_min,
    double mu_max, int n_points);

struct CascadeResult {
  double rate_hz = 0.0;          // n-fold accidental rate before reductions
  double reduction = 1.0;        // product of applied per-channel factors
  double reduced_rate_hz = 0.0;  // rate / reduction
};

// A_nfold = S_1*...*S_n * tau^(n-1); per-channel reductions multiply.
CascadeResult cascade_accidentals(const std::vector<double>& singles_cps,
                                  double window_ps,
                                  const std::vector<double>& reductions = {});

// (bw_from/bw_to) * (win_from/win_to).
double filter_window_scaling(double bw_from_ghz, double bw_to_ghz,
                             double win_from_ps, double win_to_ps);

}  // namespace qcoex::rates

#endif  // QCOEX_RATES_HPP_
