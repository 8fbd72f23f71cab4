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

#include "qcoex/raman.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qcoex/constants.hpp"
#include "qcoex/errors.hpp"

using nlohmann::json;

namespace qcoex::raman {
namespace {

// Thompson-Cox-Hastings pseudo-Voigt: a weighted Lorentzian/Gaussian mix
// whose effective FWHM combines the two component widths.
double pseudo_voigt(double x, double fwhm_g, double fwhm_l) {
  double g = fwhm_g, l = fwhm_l;
  double f5 = std::pow(g, 5) + 2.69269 * std::pow(g, 4) * l +
              2.42843 * std::pow(g, 3) * l * l +
              4.47163 * g * g * std::pow(l, 3) +
              0.07842 * g * std::pow(l, 4) + std::pow(l, 5);
  double f = std::pow(f5, 0.2);
  double r = l / f;
  double eta = 1.36603 * r - 0.47719 * r * r + 0.11116 * r * r * r;
  double u = x / f;
  double lor = 1.0 / (1.0 + 4.0 * u * u);
  double gau = std::exp(-4.0 * std::numbers::ln2 * u * u);
  return eta * lor + (1.0 - eta) * gau;
}

double mode_shape(const VibrationalMode& m, double offset_thz) {
  // Antisymmetrized so the profile is odd in the offset and vanishes at 0.
  return m.amplitude *
         (pseudo_voigt(offset_thz - m.center_thz, m.gaussian_fwhm_thz,
                       m.lorentzian_fwhm_thz) -
          pseudo_voigt(offset_thz + m.center_thz, m.gaussian_fwhm_thz,
                       m.lorentzian_fwhm_thz));
}

}  // namespace

void VibrationalMode::validate() const {
  if (amplitude < 0.0) throw DomainError("mode amplitude must be >= 0");
  if (!(gaussian_fwhm_thz > 0.0) || !(lorentzian_fwhm_thz > 0.0)) {
    throw DomainError("mode widths must be > 0");
  }
  if (!(center_thz > 0.0)) throw DomainError("mode center must be > 0");
}

void RamanGainTable::validate() const {
  if (!(temperature_k > 0.0)) throw DomainError("temperature must be > 0");
  if (!(calibration_scale > 0.0)) {
    throw DomainError("calibration scale must be > 0");
  }
  for (const auto& m : modes) m.validate();
}

RamanGainTable default_table() {
  // Modes 1-12: standard 13-mode silica decomposition (cm^-1 converted to
  // THz). Mode 13 refit at 1190 cm^-1; mode 14 is the weak 48 THz feature.
  RamanGainTable t;
  t.modes = {
      {1.6863325762499999, 1.5619187061799999, 0.52073949954599996, 1.0},
      {2.9979245799999998, 3.3103083212360001, 1.1634945294979999, 11.4},
      {6.9327005912499997, 5.2463680149999998, 1.7486894075139998, 36.67},
      {10.8674766025, 4.8716274424999995, 1.6239757449859999, 67.67},
      {13.880390805399999, 4.0570913341140002, 1.352363778038, 74.0},
      {14.899685162599999, 0.73449152209999991, 0.24493043818599999, 4.5},
      {18.332308806699999, 1.2441387007, 0.414612969414, 6.8},
      {20.735744942485997, 4.6467830989999994, 1.549027630486, 4.6},
      {23.793628014085996, 1.7837651251, 0.59448844421399993, 4.2},
      {25.047659865899998, 1.9276655049399998, 0.64245523749399991, 4.5},
      {27.880698593999998, 4.49688687, 1.4989622899999999, 2.7},
      {32.377585463999999, 2.7281113678, 0.90927052511399986, 3.1},
      {35.675302502000001, 2.6981321219999996, 0.59958491599999997, 3.26},
      {48.0, 12.5, 0.5, 0.85},
  };
  t.temperature_k = 295.0;
  t.calibration_scale = 1309.7543195260578;
  return t;
}

std::string to_json(const RamanGainTable& table) {
  json j;
  j["temperature_K"] = table.temperature_k;
  j["calibration_scale"] = table.calibration_scale;
  j["modes"] = json::array();
  for (const auto& m : table.modes) {
    j["modes"].push_back({{"center_THz", m.center_thz},
                          {"gw_THz", m.gaussian_fwhm_thz},
                          {"lw_THz", m.lorentzian_fwhm_thz},
                          {"amp", m.amplitude}});
  }
  return j.dump(2);
}

RamanGainTable table_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("raman table parse: ") + e.what());
  }
  RamanGainTable t;
  try {
    t.temperature_k = j.at("temperature_K").get<double>();
    t.calibration_scale = j.at("calibration_scale").get<double>();
    for (const auto& jm : j.at("modes")) {
      t.modes.push_back({jm.at("center_THz").get<double>(),
                         jm.at("gw_THz").get<double>(),
                         jm.at("lw_THz").get<double>(),
                         jm.at("amp").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("raman table schema: ") + e.what());
  }
  t.validate();
  return t;
}

RamanGainTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open raman table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_json(buf.str());
}

double gain_density(const RamanGainTable& table, double offset_thz) {
  if (offset_thz < 0.0 || offset_thz > kMaxOffsetThz) {
    throw RangeError("offset " + std::to_string(offset_thz) +
                     " THz outside [0, 60]");
  }
  double total = 0.0;
  for (const auto& m : table.modes) total += mode_shape(m, offset_thz);
  return total;
}

double phonon_occupation(double offset_thz, double temperature_k) {
  if (!(temperature_k > 0.0)) throw DomainError("temperature must be > 0");
  if (!(offset_thz > 0.0)) {
    throw DomainError("phonon occupation diverges at zero offset");
  }
  return 1.0 / std::expm1(kHOverKbKPerThz * offset_thz / temperature_k);
}

double scattering_density(const RamanGainTable& table, double offset_thz,
                          Side side) {
  double g = gain_density(table, offset_thz);
  if (g == 0.0 && side == Side::kAntiStokes) return 0.0;
  double n = phonon_occupation(offset_thz, table.temperature_k);
  return side == Side::kAntiStokes ? g * n : g * (n + 1.0);
}

double effective_length_co(double alpha_q_per_km, double alpha_c_per_km,
                           double length_km) {
  double d = alpha_c_per_km - alpha_q_per_km;
  if (std::abs(d) * length_km < 1e-6) {
    // Series limit; the first correction term is (d*L)^2/24, below 1e-13.
    double mid = 0.5 * (alpha_q_per_km + alpha_c_per_km);
    return length_km * std::exp(-mid * length_km);
  }
  return (std::exp(-alpha_q_per_km * length_km) -
          std::exp(-alpha_c_per_km * length_km)) / d;
}

double effective_length_counter(double alpha_q_per_km, double alpha_c_per_km,
                                double length_km) {
  double s = alpha_q_per_km + alpha_c_per_km;
  if (s * length_km < 1e-9) return length_km;
  return -std::expm1(-s * length_km) / s;
}

namespace {

double link_alpha_natural(const net::FiberLink& link, double wavelength_nm) {
  // Excess loss treated as distributed along the span.
  if (link.length_km <= 0.0) return 0.0;
  double total_db = loss_db(link, wavelength_nm);
  return db_per_km_to_natural(total_db / link.length_km);
}

}  // namespace

double sprs_rate(const RamanGainTable& table,
                 const net::ClassicalChannel& classical, double quantum_nm,
                 double filter_bandwidth_ghz, const net::FiberLink& link,
                 net::Direction direction) {
  if (quantum_nm >= classical.wavelength_nm) {
    throw DomainError(
        "quantum wavelength must be below the classical wavelength "
        "(anti-Stokes regime)");
  }
  double launch_mw = dbm_to_mw(classical.launch_dbm);
  if (launch_mw < 0.0) throw DomainError("launch power must be >= 0");
  if (!(filter_bandwidth_ghz > 0.0)) {
    throw DomainError("filter bandwidth must be > 0");
  }
  double offset = nm_to_thz(quantum_nm) - nm_to_thz(classical.wavelength_nm);
  double density = scattering_density(table, offset, Side::kAntiStokes);
  double aq = link_alpha_natural(link, quantum_nm);
  double ac = link_alpha_natural(link, classical.wavelength_nm);
  double leff = direction == net::Direction::kCo
                    ? effective_length_co(aq, ac, link.length_km)
                    : effective_length_counter(aq, ac, link.length_km);
  return launch_mw * table.calibration_scale * density * filter_bandwidth_ghz *
         leff;
}

double sprs_rate_plan(const RamanGainTable& table,
                      const net::ClassicalWdmPlan& plan, double quantum_nm,
                      double filter_bandwidth_ghz, const net::FiberLink& link,
                      net::Direction direction) {
  double total = 0.0;
  for (const auto& ch : plan.channels) {
    total +=
        sprs_rate(table, ch, quantum_nm, filter_bandwidth_ghz, link, direction);
  }
  return total;
}

double predicted_detector_cps(const RamanGainTable& table,
                              const Observation& obs) {
  double fiber_out = sprs_rate_plan(table, obs.plan, obs.quantum_nm,
                                    obs.filter_bandwidth_ghz, obs.link);
  return fiber_out * db_to_linear(-obs.receiver_insertion_db) *
         obs.detector_efficiency;
}

CalibrationResult calibrate(const RamanGainTable& table,
                            const std::vector<Observation>& observations) {
  if (observations.empty()) {
    throw ConfigError("calibration needs at least one observation");
  }
  // Single-parameter log-LS fit: the optimal scale multiplier is the
  // geometric mean of measured/predicted ratios.
  double sum_log = 0.0;
  for (const auto& obs : observations) {
    double pred = predicted_detector_cps(table, obs);
    if (!(pred > 0.0)) {
      throw DomainError("zero predicted rate in calibration observation");
    }
    if (!(obs.measured_cps > 0.0)) {
      throw DomainError("measured rate must be > 0");
    }
    sum_log += std::log(obs.measured_cps / pred);
  }
  CalibrationResult result;
  result.table = table;
  result.table.calibration_scale =
      table.calibration_scale *
      std::exp(sum_log / static_cast<double>(observations.size()));
  for (const auto& obs : observations) {
    double pred = predicted_detector_cps(result.table, obs);
    result.log_residuals.push_back(std::log(pred / obs.measured_cps));
  }
  return result;
}

}  // namespace qcoex::raman
