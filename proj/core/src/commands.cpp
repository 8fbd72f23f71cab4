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

#include "qcoex/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"
#include "qcoex/mcsim.hpp"
#include "qcoex/planner.hpp"
#include "qcoex/raman.hpp"
#include "qcoex/source.hpp"
#include "qcoex/tomo.hpp"

using nlohmann::json;

namespace qcoex::cli {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string power_tag(double dbm) {
  std::string s = fmt(dbm);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s + "dBm";
}

std::string write_file(const Options& opts, const std::string& name,
                       const std::string& content) {
  std::filesystem::create_directories(opts.out_dir);
  std::filesystem::path path = std::filesystem::path(opts.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  return path.string();
}

json report_root(const cfg::RunConfig& config, const Options& opts,
                 const std::string& command) {
  json j;
  j["command"] = command;
  j["config_hash"] = config.config_hash;
  j["seed"] = opts.seed;
  return j;
}

// Pair-weight relative to the degenerate pair, used when scanning channels
// so mu stays defined per channel pair at band center.
double relative_weight(const src::EppSource& source,
                       const src::ChannelPair& pair) {
  src::ChannelPair center{{source.pump_nm, pair.signal.bandwidth_ghz},
                          {source.pump_nm, pair.idler.bandwidth_ghz}};
  double w0 = src::spectral_weight(source, center);
  double w = src::spectral_weight(source, pair);
  return w0 > 0.0 ? std::min(1.0, w / w0) : 1.0;
}

struct ArmPair {
  rates::ArmConfig signal;
  rates::ArmConfig idler;
};

ArmPair build_arms(const cfg::RunConfig& config, double power_dbm,
                   const net::SwitchState& routing) {
  net::NetworkTopology topo = config.topology_at(power_dbm);
  net::RoutedPaths paths = net::route(topo, routing);
  return ArmPair{build_arm(config, config.signal_arm, paths.signal),
                 build_arm(config, config.idler_arm, paths.idler)};
}

const std::vector<std::pair<std::string, net::SwitchState>>& scan_routings() {
  static const std::vector<std::pair<std::string, net::SwitchState>> r = {
      {"signal_lit", {net::Routing::kLit, net::Routing::kDark}},
      {"idler_lit", {net::Routing::kDark, net::Routing::kLit}}};
  return r;
}

std::string routing_name(const net::SwitchState& s) {
  if (s.signal == net::Routing::kLit && s.idler == net::Routing::kLit) {
    return "both_lit";
  }
  return s.signal == net::Routing::kLit ? "signal_lit" : "idler_lit";
}

json prediction_json(const rates::RatePrediction& p) {
  return json{{"singles_signal_cps", p.singles_signal},
              {"singles_idler_cps", p.singles_idler},
              {"true_coincidences_ccps", p.true_coincidences},
              {"accidentals_ccps", p.accidentals},
              {"multipair_orthogonal_ccps", p.multipair_orthogonal},
              {"ccr_ccps", p.total_ccr()},
              {"visibility_hv", p.visibility_hv},
              {"car", p.car},
              {"mu_effective", p.mu_effective}};
}

json matrix_json(const tomo::Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return json{{"re", re}, {"im", im}};
}

}  // namespace

void Options::validate() const {
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be 'csv' or 'json'");
  }
}

rates::ArmConfig build_arm(const cfg::RunConfig& config,
                           const cfg::ArmChannel& arm,
                           const net::ArmPath& path) {
  rates::ArmConfig out;
  out.detector = config.detector;
  out.loss_db = path.total_loss_db(arm.channel_nm) +
                config.receiver_insertion_db + arm.extra_loss_db;
  if (!path.coexistors.empty()) {
    net::ClassicalWdmPlan coex;
    coex.channels = path.coexistors;
    double fiber_out = raman::sprs_rate_plan(
        config.table, coex, arm.channel_nm, arm.bandwidth_ghz,
        path.links.front());
    out.noise_cps = fiber_out * db_to_linear(-config.receiver_insertion_db);
  }
  return out;
}

std::vector<std::string> cmd_spectrum(const cfg::RunConfig& config,
                                      const Options& options) {
  const auto& sp = config.spectrum;
  net::FiberLink link{"spectrum_span", sp.length_km,
                      net::default_attenuation(), sp.excess_db, false};
  std::ostringstream csv;
  csv << "# config_hash=" << config.config_hash << "\n";
  csv << "pump_nm,quantum_nm,sprs_cps\n";
  json rows = json::array();
  for (double pump : sp.pumps_nm) {
    for (double lam = sp.lambda_min_nm; lam <= sp.lambda_max_nm + 1e-9;
         lam += sp.step_nm) {
      double rate = raman::sprs_rate(config.table, {pump, sp.launch_dbm}, lam,
                                     sp.bandwidth_ghz, link);
      csv << fmt(pump) << ',' << fmt(lam) << ',' << fmt(rate) << "\n";
      rows.push_back({{"pump_nm", pump}, {"quantum_nm", lam},
                      {"sprs_cps", rate}});
    }
  }
  json report = report_root(config, options, "spectrum");
  report["rows"] = rows;
  std::vector<std::string> written;
  if (options.format == "csv") {
    written.push_back(write_file(options, "spectrum.csv", csv.str()));
  }
  written.push_back(write_file(options, "spectrum.json", report.dump(2)));
  return written;
}

std::vector<std::string> cmd_rates(const cfg::RunConfig& config,
                                   const Options& options) {
  std::ostringstream csv;
  csv << "# config_hash=" << config.config_hash << "\n";
  csv << "power_dbm,routing,signal_nm,idler_nm,mu,visibility,ccr_ccps,car,"
         "accidentals_ccps,singles_signal_cps,singles_idler_cps\n";
  json rows = json::array();

  auto emit = [&](double power, const std::string& routing,
                  const src::ChannelPair& pair, double weight,
                  const rates::RatePrediction& p) {
    csv << fmt(power) << ',' << routing << ',' << fmt(pair.signal.center_nm)
        << ',' << fmt(pair.idler.center_nm) << ',' << fmt(config.source.mu)
        << ',' << fmt(p.visibility_hv) << ',' << fmt(p.total_ccr()) << ','
        << fmt(p.car) << ',' << fmt(p.accidentals) << ','
        << fmt(p.singles_signal) << ',' << fmt(p.singles_idler) << "\n";
    json row = prediction_json(p);
    row["power_dbm"] = power;
    row["routing"] = routing;
    row["signal_nm"] = pair.signal.center_nm;
    row["idler_nm"] = pair.idler.center_nm;
    row["pair_weight"] = weight;
    rows.push_back(row);
  };

  for (double power : config.classical_powers_dbm) {
    if (config.rates_scan_band) {
      auto grid = src::channel_grid(config.planner.band_start_nm,
                                    config.planner.band_end_nm,
                                    config.planner.spacing_ghz,
                                    config.source.pump_nm);
      for (const auto& [name, sw] : scan_routings()) {
        for (const auto& pair : grid) {
          cfg::RunConfig scan = config;
          scan.signal_arm.channel_nm = pair.signal.center_nm;
          scan.signal_arm.bandwidth_ghz = pair.signal.bandwidth_ghz;
          scan.idler_arm.channel_nm = pair.idler.center_nm;
          scan.idler_arm.bandwidth_ghz = pair.idler.bandwidth_ghz;
          ArmPair arms = build_arms(scan, power, sw);
          double w = relative_weight(config.source, pair);
          auto p = rates::coincidence_rates(config.source, w, arms.signal,
                                            arms.idler, config.coincidence);
          emit(power, name, pair, w, p);
        }
      }
    } else {
      src::ChannelPair pair{
          {config.signal_arm.channel_nm, config.signal_arm.bandwidth_ghz},
          {config.idler_arm.channel_nm, config.idler_arm.bandwidth_ghz}};
      ArmPair arms = build_arms(config, power, config.routing);
      auto p = rates::coincidence_rates(config.source, 1.0, arms.signal,
                                        arms.idler, config.coincidence);
      emit(power, routing_name(config.routing), pair, 1.0, p);
    }
  }

  json report = report_root(config, options, "rates");
  report["rows"] = rows;
  std::vector<std::string> written;
  if (options.format == "csv") {
    written.push_back(write_file(options, "rates.csv", csv.str()));
  }
  written.push_back(write_file(options, "rates.json", report.dump(2)));
  return written;
}

std::vector<std::string> cmd_sweep(const cfg::RunConfig& config,
                                   const Options& options) {
  json curves = json::array();
  std::vector<std::string> written;
  for (double power : config.classical_powers_dbm) {
    for (const auto& [name, sw] : scan_routings()) {
      ArmPair arms = build_arms(config, power, sw);
      auto curve = rates::visibility_vs_ccr_sweep(
          config.source, 1.0, arms.signal, arms.idler, config.coincidence,
          config.sweep.mu_min, config.sweep.mu_max, config.sweep.points);
      std::ostringstream csv;
      csv << "# config_hash=" << config.config_hash << "\n";
      csv << "mu,ccr_ccps,visibility,car,accidentals_ccps\n";
      json points = json::array();
      for (const auto& pt : curve) {
        csv << fmt(pt.mu) << ',' << fmt(pt.ccr_ccps) << ','
            << fmt(pt.visibility) << ',' << fmt(pt.car) << ','
            << fmt(pt.accidentals_ccps) << "\n";
        points.push_back({{"mu", pt.mu},
                          {"ccr_ccps", pt.ccr_ccps},
                          {"visibility", pt.visibility},
                          {"car", pt.car},
                          {"accidentals_ccps", pt.accidentals_ccps}});
      }
      if (options.format == "csv") {
        written.push_back(write_file(
            options, "sweep_" + name + "_" + power_tag(power) + ".csv",
            csv.str()));
      }
      curves.push_back({{"power_dbm", power},
                        {"routing", name},
                        {"points", points}});
    }
  }
  json report = report_root(config, options, "sweep");
  report["curves"] = curves;
  written.push_back(write_file(options, "sweep.json", report.dump(2)));
  return written;
}

namespace {

json plan_json(const plan::CoexistencePlan& p) {
  return json{{"signal_nm", p.pair.signal.center_nm},
              {"idler_nm", p.pair.idler.center_nm},
              {"routing", routing_name(p.switch_state)},
              {"mu", p.mu},
              {"score", p.score},
              {"fidelity_to_dark", p.fidelity_to_dark},
              {"total_sprs_singles_cps", p.total_sprs_singles},
              {"predicted", prediction_json(p.predicted)}};
}

plan::Objective objective_from_string(const std::string& s) {
  if (s == "max_visibility") return plan::Objective::kMaxVisibility;
  if (s == "max_ccr_at_v") return plan::Objective::kMaxCcrAtV;
  if (s == "max_fidelity") return plan::Objective::kMaxFidelity;
  throw ConfigError("unknown planner objective '" + s + "'");
}

}  // namespace

std::vector<std::string> cmd_plan(const cfg::RunConfig& config,
                                  const Options& options) {
  plan::PlannerContext ctx;
  ctx.table = config.table;
  ctx.topology = config.topology_at(config.planner.power_dbm);
  ctx.source = config.source;
  ctx.detector = config.detector;
  ctx.coincidence = config.coincidence;
  ctx.receiver_insertion_db = config.receiver_insertion_db;
  ctx.extra_arm_loss_db = config.signal_arm.extra_loss_db;
  ctx.dark_fidelity = config.tomo.dark_fidelity;
  ctx.allow_both_lit = config.planner.allow_both_lit;

  auto grid = src::channel_grid(config.planner.band_start_nm,
                                config.planner.band_end_nm,
                                config.planner.spacing_ghz,
                                config.source.pump_nm);
  auto objective = objective_from_string(config.planner.objective);
  auto candidates =
      plan::enumerate_plans(grid, ctx, plan::default_mu_grid(), objective);
  auto ranked = plan::rank_plans(candidates, config.planner.constraints);
  if (ranked.empty()) {
    // optimize() reproduces the binding-constraint diagnostics.
    plan::optimize(candidates, config.planner.constraints);
  }

  json report = report_root(config, options, "plan");
  report["power_dbm"] = config.planner.power_dbm;
  report["objective"] = config.planner.objective;
  report["n_candidates"] = candidates.size();
  report["n_feasible"] = ranked.size();
  report["chosen"] = plan_json(ranked.front());
  json runners = json::array();
  for (size_t k = 1; k < ranked.size() && k <= 10; ++k) {
    runners.push_back(plan_json(ranked[k]));
  }
  report["runners_up"] = runners;
  return {write_file(options, "plan.json", report.dump(2))};
}

std::vector<std::string> cmd_tomo(const cfg::RunConfig& config,
                                  const Options& options) {
  auto rho_dark = tomo::DensityMatrix::werner(
      tomo::werner_p_from_fidelity(config.tomo.dark_fidelity));

  json records = json::array();
  std::vector<double> powers = config.classical_powers_dbm;
  bool dark_only = powers.empty();
  if (dark_only) powers.push_back(0.0);  // placeholder, zero channels below

  uint64_t seed = options.seed;
  for (size_t pi = 0; pi < powers.size(); ++pi) {
    double power = powers[pi];
    cfg::RunConfig run = config;
    if (dark_only) run.plan_channels_nm.clear();
    ArmPair arms = build_arms(run, power, run.routing);
    auto pred = rates::coincidence_rates(run.source, 1.0, arms.signal,
                                         arms.idler, run.coincidence);
    // Baseline with the classical light off: rho_dark already absorbs the
    // dark-operation accidentals, so only the excess noise mixes in I/4.
    ArmPair quiet = arms;
    quiet.signal.noise_cps = 0.0;
    quiet.idler.noise_cps = 0.0;
    auto base = rates::coincidence_rates(run.source, 1.0, quiet.signal,
                                         quiet.idler, run.coincidence);
    double excess = (2.0 * pred.multipair_orthogonal + 2.0 * pred.accidentals)
                  - (2.0 * base.multipair_orthogonal + 2.0 * base.accidentals);
    double eps = std::max(0.0, excess) / pred.total_ccr();
    tomo::Matrix mix = (1.0 - eps) * rho_dark.matrix() +
                       eps * tomo::Matrix::Identity(4, 4) / 4.0;
    auto rho_coex = tomo::DensityMatrix::from_matrix(mix);

    json rec;
    rec["power_dbm"] = dark_only ? json(nullptr) : json(power);
    rec["epsilon"] = eps;
    rec["ccr_ccps"] = pred.total_ccr();
    rec["visibility_hv"] = pred.visibility_hv;
    rec["fidelity_to_dark"] = tomo::fidelity(rho_dark, rho_coex);
    rec["purity"] = tomo::purity(rho_coex);
    rec["rho_coex"] = matrix_json(rho_coex.matrix());

    if (config.tomo.simulate && config.tomo.counts_per_setting > 0.0) {
      auto settings = tomo::all_settings(2);
      auto counts = tomo::simulate_counts(
          rho_coex, settings, config.tomo.counts_per_setting,
          config.tomo.noise_floor, seed + pi);
      for (auto& cr : counts) cr.seconds = config.tomo.integration_s;
      auto rho_rec = tomo::mle_reconstruct(counts, 4);
      rec["reconstruction"] = {
          {"fidelity_to_model", tomo::fidelity(rho_rec, rho_coex)},
          {"purity", tomo::purity(rho_rec)},
          {"rho", matrix_json(rho_rec.matrix())}};
    }
    records.push_back(rec);
  }

  json report = report_root(config, options, "tomo");
  report["dark_fidelity_input"] = config.tomo.dark_fidelity;
  report["rho_dark"] = matrix_json(rho_dark.matrix());
  report["records"] = records;
  return {write_file(options, "tomo.json", report.dump(2))};
}

std::vector<std::string> cmd_mc(const cfg::RunConfig& config,
                                const Options& options) {
  ArmPair arms = build_arms(config, config.mc.power_dbm, config.routing);

  mc::SimConfig sim;
  sim.n_pulses = config.mc.n_pulses;
  sim.seed = options.seed;
  sim.rep_rate_hz = config.source.rep_rate_hz;
  sim.mu = config.source.mu;
  sim.statistics = config.mc.statistics == "thermal"
                       ? mc::PairStatistics::kThermal
                       : mc::PairStatistics::kPoisson;
  sim.window_ps = config.coincidence.window_ps;
  sim.workers = config.mc.workers;
  auto to_arm = [](const rates::ArmConfig& a) {
    mc::ArmSim s;
    s.eta_total = a.detector.efficiency * db_to_linear(-a.loss_db);
    s.noise_cps = a.noise_cps * a.detector.efficiency;  // detected noise
    s.dark_cps = a.detector.dark_cps;
    s.jitter_fwhm_ps = a.detector.jitter_fwhm_ps;
    return s;
  };
  sim.signal = to_arm(arms.signal);
  sim.idler = to_arm(arms.idler);

  mc::SimResult events = mc::simulate_events(sim);
  auto summary = mc::count_coincidences(events.signal, events.idler,
                                        sim.window_ps, events.duration_s,
                                        events.pulse_period_ps);
  auto analytic = rates::coincidence_rates(config.source, 1.0, arms.signal,
                                           arms.idler, config.coincidence);

  json report = report_root(config, options, "mc");
  report["power_dbm"] = config.mc.power_dbm;
  report["n_pulses"] = sim.n_pulses;
  report["duration_s"] = events.duration_s;
  report["singles_signal"] = events.signal.events.size();
  report["singles_idler"] = events.idler.events.size();
  report["ccr_hz"] = summary.ccr_hz;
  report["accidentals_hz"] = summary.accidentals_hz;
  report["visibility"] = summary.visibility;
  report["visibility_stderr"] = summary.visibility_stderr;
  report["analytic"] = prediction_json(analytic);

  std::vector<std::string> written;
  if (config.mc.dump_events) {
    std::ostringstream csv;
    csv << "# config_hash=" << config.config_hash << "\n";
    csv << "arm,t_ps,pol,tag\n";
    auto dump = [&](const mc::EventStream& s) {
      for (const auto& e : s.events) {
        const char* tag = e.origin == mc::Origin::kPair ? "pair"
                          : e.origin == mc::Origin::kNoise ? "noise" : "dark";
        csv << s.arm << ',' << fmt(e.t_ps) << ',' << (e.pol ? 'V' : 'H')
            << ',' << tag << "\n";
      }
    };
    dump(events.signal);
    dump(events.idler);
    written.push_back(write_file(options, "events.csv", csv.str()));
  }
  written.push_back(write_file(options, "mc.json", report.dump(2)));
  return written;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"spRS noise, coincidence, and coexistence planning engine"};
  app.require_subcommand(1);

  std::string config_path;
  Options options;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config path")->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_option("--seed", options.seed, "RNG seed");
    sub->add_option("--format", options.format, "csv|json");
  };
  for (const char* name :
       {"spectrum", "rates", "sweep", "plan", "tomo", "mc"}) {
    add_common(app.add_subcommand(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    options.validate();
    cfg::RunConfig config = cfg::load_config(config_path);
    std::vector<std::string> written;
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "spectrum") written = cmd_spectrum(config, options);
    if (sub == "rates") written = cmd_rates(config, options);
    if (sub == "sweep") written = cmd_sweep(config, options);
    if (sub == "plan") written = cmd_plan(config, options);
    if (sub == "tomo") written = cmd_tomo(config, options);
    if (sub == "mc") written = cmd_mc(config, options);
    for (const auto& path : written) std::cout << path << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 4;
  } catch (const ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 5;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qcoex::cli
