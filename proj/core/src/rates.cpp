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

#include "qcoex/rates.hpp"

#include <cmath>
#include <limits>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"

namespace qcoex::rates {

void DetectorModel::validate() const {
  if (efficiency < 0.0 || efficiency > 1.0) {
    throw DomainError("detector efficiency must be in [0, 1]");
  }
  if (dark_cps < 0.0) throw DomainError("dark rate must be >= 0");
  if (jitter_fwhm_ps < 0.0) throw DomainError("jitter must be >= 0");
}

void CoincidenceConfig::validate() const {
  if (!(window_ps > 0.0)) throw DomainError("coincidence window must be > 0");
}

double singles_rate(double arm_loss_db, const DetectorModel& detector,
                    double noise_cps, const src::EppSource& source,
                    double pair_weight) {
  if (arm_loss_db < 0.0) throw DomainError("arm loss must be >= 0");
  detector.validate();
  source.validate();
  double eta_total = detector.efficiency * db_to_linear(-arm_loss_db);
  double mu_eff = source.mu * pair_weight;
  return source.rep_rate_hz * mu_eff * eta_total +
         noise_cps * detector.efficiency + detector.dark_cps;
}

RatePrediction coincidence_rates(const src::EppSource& source,
                                 double pair_weight, const ArmConfig& signal,
                                 const ArmConfig& idler,
                                 const CoincidenceConfig& cc) {
  cc.validate();
  double tau_s = cc.window_ps * 1e-12;
  double mu_eff = source.mu * pair_weight;

  RatePrediction p;
  p.mu_effective = mu_eff;
  p.singles_signal = singles_rate(signal.loss_db, signal.detector,
                                  signal.noise_cps, source, pair_weight);
  p.singles_idler = singles_rate(idler.loss_db, idler.detector,
                                 idler.noise_cps, source, pair_weight);

  double eta_s = signal.detector.efficiency * db_to_linear(-signal.loss_db);
  double eta_i = idler.detector.efficiency * db_to_linear(-idler.loss_db);
  p.true_coincidences = source.rep_rate_hz * mu_eff * eta_s * eta_i;

  // Uncorrelated singles: everything whose partner was not also detected.
  double unc_s = p.singles_signal - p.true_coincidences;
  double unc_i = p.singles_idler - p.true_coincidences;
  p.accidentals = unc_s * unc_i * tau_s;
  p.multipair_orthogonal = 0.5 * mu_eff * p.true_coincidences;

  double denom = p.total_ccr();
  if (denom <= 0.0) {
    throw DomainError("visibility undefined: no predicted coincidences");
  }
  p.visibility_hv = p.true_coincidences / denom;
  double acc = p.multipair_orthogonal + p.accidentals;
  p.car = acc > 0.0 ? (p.true_coincidences + acc) / acc
                    : std::numeric_limits<double>::infinity();
  return p;
}

std::vector<SweepPoint> visibility_vs_ccr_sweep(
    const src::EppSource& source, double pair_weight, const ArmConfig& signal,
    const ArmConfig& idler, const CoincidenceConfig& cc, double mu_min,
    double mu_max, int n_points) {
  if (!(mu_min > 0.0) || !(mu_max >= mu_min)) {
    throw DomainError("mu range must be positive and ordered");
  }
  if (n_points < 1) throw DomainError("sweep needs at least one point");
  std::vector<SweepPoint> curve;
  curve.reserve(static_cast<size_t>(n_points));
  double log_lo = std::log(mu_min);
  double log_hi = std::log(mu_max);
  for (int k = 0; k < n_points; ++k) {
    double t = n_points == 1 ? 0.0
                             : static_cast<double>(k) / (n_points - 1);
    src::EppSource s = source;
    s.mu = std::exp(log_lo + t * (log_hi - log_lo));
    RatePrediction p = coincidence_rates(s, pair_weight, signal, idler, cc);
    curve.push_back({s.mu, p.total_ccr(), p.visibility_hv, p.car,
                     p.accidentals});
  }
  return curve;
}

CascadeResult cascade_accidentals(const std::vector<double>& singles_cps,
                                  double window_ps,
                                  const std::vector<double>& reductions) {
  if (singles_cps.size() < 2) {
    throw DomainError("cascade accidentals need n >= 2 singles rates");
  }
  if (!(window_ps > 0.0)) throw DomainError("window must be > 0");
  if (reductions.size() > singles_cps.size()) {
    throw DomainError("more reduction factors than channels");
  }
  double tau_s = window_ps * 1e-12;
  CascadeResult r;
  r.rate_hz = 1.0;
  for (double s : singles_cps) {
    if (s < 0.0) throw DomainError("singles rates must be >= 0");
    r.rate_hz *= s;
  }
  r.rate_hz *= std::pow(tau_s, static_cast<double>(singles_cps.size() - 1));
  for (double m : reductions) {
    if (!(m > 0.0)) throw DomainError("reduction factors must be > 0");
    r.reduction *= m;
  }
  r.reduced_rate_hz = r.rate_hz / r.reduction;
  return r;
}

double filter_window_scaling(double bw_from_ghz, double bw_to_ghz,
                             double win_from_ps, double win_to_ps) {
  if (!(bw_from_ghz > 0.0 && bw_to_ghz > 0.0 && win_from_ps > 0.0 &&
        win_to_ps > 0.0)) {
    throw DomainError("filter/window scaling arguments must be > 0");
  }
  return (bw_from_ghz / bw_to_ghz) * (win_from_ps / win_to_ps);
}

}  // namespace qcoex::rates
