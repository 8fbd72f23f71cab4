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
// Exhaustive search over channel pairs, switch routing, and mu operating
// points, maximizing predicted visibility/CCR/fidelity under constraints.

#ifndef QCOEX_PLANNER_HPP_
#define QCOEX_PLANNER_HPP_

#include <vector>

#include "qcoex/network.hpp"
#include "qcoex/raman.hpp"
#include "qcoex/rates.hpp"
#include "qcoex/source.hpp"

namespace qcoex::plan {

struct PlanConstraints {
  double min_visibility = 0.7071067811865476;  // Bell violation threshold
  double min_ccr_ccps = 0.0;
  double max_mu = 0.2;

  void validate() const;
};

enum class Objective { kMaxVisibility, kMaxCcrAtV, kMaxFidelity };

// Everything needed to score one candidate.
struct PlannerContext {
  raman::RamanGainTable table;
  net::NetworkTopology topology;
  src::EppSource source;  // mu is overridden per candidate
  rates::DetectorModel detector;
  rates::CoincidenceConfig coincidence;
  double receiver_insertion_db = 3.0;  // tunable filter per arm
  double extra_arm_loss_db = 0.0;
  double dark_fidelity = 0.977;  // source imperfection for kMaxFidelity
  bool allow_both_lit = false;
};

struct CoexistencePlan {
  src::ChannelPair pair;
  net::SwitchState switch_state;
  double mu = 0.0;
  rates::RatePrediction predicted;
  double score = 0.0;
  double fidelity_to_dark = 1.0;
  double total_sprs_singles = 0.0;  // tie-break key
};

// Logarithmic grid, 20 points in [1e-3, 0.2].
std::vector<double> default_mu_grid();

// Cartesian product of pairs x routings x mu grid, each scored.
std::vector<CoexistencePlan> enumerate_plans(
    const std::vector<src::ChannelPair>& grid, const PlannerContext& ctx,
    const std::vector<double>& mu_grid, Objective objective);

// Feasible candidates sorted best first under the total order
// (score desc, spRS singles asc, signal wavelength asc, mu asc, routing).
std::vector<CoexistencePlan> rank_plans(
    const std::vector<CoexistencePlan>& candidates,
    const PlanConstraints& constraints);

// Argmax of the objective among feasible candidates; deterministic
// tie-breaks (lower spRS singles, then shorter signal wavelength).
CoexistencePlan optimize(const std::vector<CoexistencePlan>& candidates,
                         const PlanConstraints& constraints);

struct BandRanking {
  double band_nm = 0.0;
  double sprs_per_mw = 0.0;  // at the fiber output
};

// Candidate classical bands ranked best (least noise) first.
std::vector<BandRanking> classical_band_advisor(
    double quantum_nm, const std::vector<double>& candidate_bands_nm,
    const raman::RamanGainTable& table, const net::FiberLink& link,
    double filter_bandwidth_ghz = 50.0);

}  // namespace qcoex::plan

#endif  // QCOEX_PLANNER_HPP_
