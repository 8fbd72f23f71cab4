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

#include "qcoex/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"
#include "qcoex/tomo.hpp"

namespace qcoex::plan {
namespace {

struct ArmScore {
  double loss_db = 0.0;
  double noise_cps = 0.0;  // at detector input
};

ArmScore score_arm(const PlannerContext& ctx, const net::ArmPath& path,
                   const src::QuantumChannel& channel) {
  ArmScore arm;
  arm.loss_db = path.total_loss_db(channel.center_nm) +
                ctx.receiver_insertion_db + ctx.extra_arm_loss_db;
  if (!path.coexistors.empty()) {
    net::ClassicalWdmPlan coex;
    coex.channels = path.coexistors;
    double at_fiber_out =
        raman::sprs_rate_plan(ctx.table, coex, channel.center_nm,
                              channel.bandwidth_ghz, path.links.front());
    arm.noise_cps = at_fiber_out * db_to_linear(-ctx.receiver_insertion_db);
  }
  return arm;
}

CoexistencePlan score_candidate(const PlannerContext& ctx,
                                const src::ChannelPair& pair,
                                const net::SwitchState& sw, double mu,
                                Objective objective) {
  CoexistencePlan cand;
  cand.pair = pair;
  cand.switch_state = sw;
  cand.mu = mu;

  net::RoutedPaths paths = net::route(ctx.topology, sw);
  ArmScore s_arm = score_arm(ctx, paths.signal, pair.signal);
  ArmScore i_arm = score_arm(ctx, paths.idler, pair.idler);

  src::EppSource source = ctx.source;
  source.mu = mu;
  rates::ArmConfig sig{s_arm.loss_db, ctx.detector, s_arm.noise_cps};
  rates::ArmConfig idl{i_arm.loss_db, ctx.detector, i_arm.noise_cps};
  cand.predicted =
      rates::coincidence_rates(source, 1.0, sig, idl, ctx.coincidence);
  cand.total_sprs_singles = s_arm.noise_cps + i_arm.noise_cps;

  switch (objective) {
    case Objective::kMaxVisibility:
      cand.score = cand.predicted.visibility_hv;
      break;
    case Objective::kMaxCcrAtV:
      cand.score = cand.predicted.total_ccr();
      break;
    case Objective::kMaxFidelity: {
      auto dark = tomo::DensityMatrix::werner(
          tomo::werner_p_from_fidelity(ctx.dark_fidelity));
      auto coex = tomo::coexistence_state(dark, cand.predicted);
      cand.fidelity_to_dark = tomo::fidelity(dark, coex);
      cand.score = cand.fidelity_to_dark;
      break;
    }
  }
  return cand;
}

int routing_rank(const net::SwitchState& s) {
  int r = 0;
  if (s.signal == net::Routing::kDark) r += 2;
  if (s.idler == net::Routing::kDark) r += 1;
  return r;
}

// Total order: higher score first, then lower spRS singles, then shorter
// signal wavelength, then lower mu, then routing label.
bool better(const CoexistencePlan& a, const CoexistencePlan& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.total_sprs_singles != b.total_sprs_singles) {
    return a.total_sprs_singles < b.total_sprs_singles;
  }
  if (a.pair.signal.center_nm != b.pair.signal.center_nm) {
    return a.pair.signal.center_nm < b.pair.signal.center_nm;
  }
  if (a.mu != b.mu) return a.mu < b.mu;
  return routing_rank(a.switch_state) < routing_rank(b.switch_state);
}

}  // namespace

void PlanConstraints::validate() const {
  if (!(min_visibility > 0.0) || min_visibility > 1.0) {
    throw ConfigError("min visibility must be in (0, 1]");
  }
  if (min_ccr_ccps < 0.0) throw ConfigError("min CCR must be >= 0");
  if (!(max_mu > 0.0)) throw ConfigError("max mu must be > 0");
}

std::vector<double> default_mu_grid() {
  std::vector<double> grid;
  const int n = 20;
  double lo = std::log(1e-3);
  double hi = std::log(0.2);
  for (int k = 0; k < n; ++k) {
    grid.push_back(std::exp(lo + (hi - lo) * k / (n - 1)));
  }
  return grid;
}

std::vector<CoexistencePlan> enumerate_plans(
    const std::vector<src::ChannelPair>& grid, const PlannerContext& ctx,
    const std::vector<double>& mu_grid, Objective objective) {
  std::vector<net::SwitchState> routings = {
      {net::Routing::kLit, net::Routing::kDark},
      {net::Routing::kDark, net::Routing::kLit}};
  if (ctx.allow_both_lit) {
    routings.push_back({net::Routing::kLit, net::Routing::kLit});
  }
  std::vector<CoexistencePlan> out;
  out.reserve(grid.size() * routings.size() * mu_grid.size());
  for (const auto& pair : grid) {
    for (const auto& sw : routings) {
      for (double mu : mu_grid) {
        out.push_back(score_candidate(ctx, pair, sw, mu, objective));
      }
    }
  }
  return out;
}

std::vector<CoexistencePlan> rank_plans(
    const std::vector<CoexistencePlan>& candidates,
    const PlanConstraints& constraints) {
  constraints.validate();
  std::vector<CoexistencePlan> feasible;
  for (const auto& c : candidates) {
    if (c.predicted.visibility_hv >= constraints.min_visibility &&
        c.predicted.total_ccr() >= constraints.min_ccr_ccps &&
        c.mu <= constraints.max_mu) {
      feasible.push_back(c);
    }
  }
  std::sort(feasible.begin(), feasible.end(), better);
  return feasible;
}

CoexistencePlan optimize(const std::vector<CoexistencePlan>& candidates,
                         const PlanConstraints& constraints) {
  constraints.validate();
  if (candidates.empty()) throw InfeasibleError("no candidates to optimize");

  size_t fail_v = 0, fail_ccr = 0, fail_mu = 0;
  const CoexistencePlan* best = nullptr;
  for (const auto& c : candidates) {
    bool ok = true;
    if (c.predicted.visibility_hv < constraints.min_visibility) {
      ++fail_v;
      ok = false;
    }
    if (c.predicted.total_ccr() < constraints.min_ccr_ccps) {
      ++fail_ccr;
      ok = false;
    }
    if (c.mu > constraints.max_mu) {
      ++fail_mu;
      ok = false;
    }
    if (!ok) continue;
    if (best == nullptr || better(c, *best)) best = &c;
  }
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "no feasible plan among " << candidates.size()
        << " candidates (min_visibility binding on " << fail_v
        << ", min_ccr on " << fail_ccr << ", max_mu on " << fail_mu << ")";
    throw InfeasibleError(msg.str());
  }
  return *best;
}

std::vector<BandRanking> classical_band_advisor(
    double quantum_nm, const std::vector<double>& candidate_bands_nm,
    const raman::RamanGainTable& table, const net::FiberLink& link,
    double filter_bandwidth_ghz) {
  std::vector<BandRanking> out;
  out.reserve(candidate_bands_nm.size());
  for (double band : candidate_bands_nm) {
    if (quantum_nm >= band) {
      throw DomainError("quantum channel must be below every candidate band");
    }
    net::ClassicalChannel ch{band, 0.0};  // 0 dBm = 1 mW
    out.push_back({band, raman::sprs_rate(table, ch, quantum_nm,
                                          filter_bandwidth_ghz, link)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BandRanking& a, const BandRanking& b) {
                     return a.sprs_per_mw < b.sprs_per_mw;
                   });
  return out;
}

}  // namespace qcoex::plan
