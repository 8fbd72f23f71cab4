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

#include "qcoex/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "qcoex/errors.hpp"

namespace qcoex::mc {
namespace {

constexpr uint64_t kBlockPulses = 1 << 16;

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t block_seed(uint64_t seed, uint64_t block, uint64_t stream) {
  return splitmix64(splitmix64(seed ^ (block * 0xd1342543de82ef95ULL)) ^
                    (stream * 0x2545f4914f6cdd1dULL));
}

// Deterministic sampling layer. std:: distributions are avoided because
// their output sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // Uniform in (0, 1].
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() <= p; }

  // Geometric pair-number sample for a single-mode thermal state, mean m.
  uint64_t thermal(double m) {
    if (m <= 0.0) return 0;
    double q = m / (1.0 + m);
    double u = uniform();
    double k = std::floor(std::log(u) / std::log(q));
    return k < 0.0 ? 0 : static_cast<uint64_t>(k);
  }

  // Knuth Poisson sampler; means here are << 1.
  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    double prod = 1.0;
    uint64_t n = 0;
    for (;;) {
      prod *= uniform();
      if (prod <= limit) return n;
      ++n;
    }
  }

  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  std::mt19937_64 gen_;
};

constexpr double kFwhmToSigma = 2.3548200450309493;

void append_noise(std::vector<Event>* out, Rng* rng, double rate_cps,
                  double t0_ps, double t1_ps, Origin origin) {
  if (rate_cps <= 0.0) return;
  double rate_per_ps = rate_cps * 1e-12;
  double t = t0_ps + rng->exponential(rate_per_ps);
  while (t < t1_ps) {
    out->push_back({t, static_cast<uint8_t>(rng->bernoulli(0.5) ? 1 : 0),
                    origin});
    t += rng->exponential(rate_per_ps);
  }
}

struct BlockOut {
  std::vector<Event> signal;
  std::vector<Event> idler;
};

void simulate_block(const SimConfig& cfg, uint64_t block, BlockOut* out) {
  uint64_t first = block * kBlockPulses;
  uint64_t last = std::min(cfg.n_pulses, first + kBlockPulses);
  double period = cfg.pulse_period_ps();
  double t0 = static_cast<double>(first) * period;
  double t1 = static_cast<double>(last) * period;

  // One RNG drives pair generation for both arms so losses stay correlated;
  // independent RNG streams drive each arm's background processes.
  Rng pair_rng(block_seed(cfg.seed, block, 0));
  double sig_sigma = cfg.signal.jitter_fwhm_ps / kFwhmToSigma;
  double idl_sigma = cfg.idler.jitter_fwhm_ps / kFwhmToSigma;

  for (uint64_t p = first; p < last; ++p) {
    double t_pulse = static_cast<double>(p) * period;
    // Two independent squeezers, tagged H and V, each with mean mu/2.
    for (uint8_t pol = 0; pol < 2; ++pol) {
      uint64_t n = cfg.statistics == PairStatistics::kThermal
                       ? pair_rng.thermal(0.5 * cfg.mu)
                       : pair_rng.poisson(0.5 * cfg.mu);
      for (uint64_t k = 0; k < n; ++k) {
        bool s_det = pair_rng.bernoulli(cfg.signal.eta_total);
        bool i_det = pair_rng.bernoulli(cfg.idler.eta_total);
        if (s_det) {
          double jit = sig_sigma > 0.0 ? sig_sigma * pair_rng.normal() : 0.0;
          out->signal.push_back({t_pulse + jit, pol, Origin::kPair});
        }
        if (i_det) {
          double jit = idl_sigma > 0.0 ? idl_sigma * pair_rng.normal() : 0.0;
          out->idler.push_back({t_pulse + jit, pol, Origin::kPair});
        }
      }
    }
  }

  Rng sn(block_seed(cfg.seed, block, 1));
  append_noise(&out->signal, &sn, cfg.signal.noise_cps, t0, t1, Origin::kNoise);
  Rng sd(block_seed(cfg.seed, block, 2));
  append_noise(&out->signal, &sd, cfg.signal.dark_cps, t0, t1, Origin::kDark);
  Rng in(block_seed(cfg.seed, block, 3));
  append_noise(&out->idler, &in, cfg.idler.noise_cps, t0, t1, Origin::kNoise);
  Rng id(block_seed(cfg.seed, block, 4));
  append_noise(&out->idler, &id, cfg.idler.dark_cps, t0, t1, Origin::kDark);
}

void sort_events(std::vector<Event>* events) {
  std::sort(events->begin(), events->end(),
            [](const Event& a, const Event& b) { return a.t_ps < b.t_ps; });
}

}  // namespace

uint64_t EventStream::count(Origin o) const {
  uint64_t n = 0;
  for (const auto& e : events) {
    if (e.origin == o) ++n;
  }
  return n;
}

double SimConfig::duration_s() const {
  return static_cast<double>(n_pulses) / rep_rate_hz;
}

double SimConfig::pulse_period_ps() const { return 1e12 / rep_rate_hz; }

void SimConfig::validate() const {
  if (n_pulses == 0) throw DomainError("n_pulses must be > 0");
  if (!(rep_rate_hz > 0.0)) throw DomainError("rep rate must be > 0");
  if (mu < 0.0) throw DomainError("mu must be >= 0");
  for (const ArmSim* a : {&signal, &idler}) {
    if (a->eta_total < 0.0 || a->eta_total > 1.0) {
      throw DomainError("eta_total must be in [0, 1]");
    }
    if (a->noise_cps < 0.0 || a->dark_cps < 0.0) {
      throw DomainError("background rates must be >= 0");
    }
  }
  if (!(window_ps > 0.0)) throw DomainError("window must be > 0");
}

SimResult simulate_events(const SimConfig& config) {
  config.validate();
  uint64_t n_blocks = (config.n_pulses + kBlockPulses - 1) / kBlockPulses;
  std::vector<BlockOut> blocks(n_blocks);

  unsigned workers = config.workers == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : config.workers;
  workers = std::min<uint64_t>(workers, n_blocks);
  if (workers <= 1) {
    for (uint64_t b = 0; b < n_blocks; ++b) {
      simulate_block(config, b, &blocks[b]);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (uint64_t b = w; b < n_blocks; b += workers) {
          simulate_block(config, b, &blocks[b]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  SimResult result;
  result.signal.arm = "signal";
  result.idler.arm = "idler";
  result.duration_s = config.duration_s();
  result.pulse_period_ps = config.pulse_period_ps();
  for (auto& b : blocks) {
    result.signal.events.insert(result.signal.events.end(), b.signal.begin(),
                                b.signal.end());
    result.idler.events.insert(result.idler.events.end(), b.idler.begin(),
                               b.idler.end());
  }
  sort_events(&result.signal.events);
  sort_events(&result.idler.events);
  return result;
}

namespace {

// Counts ordered (signal, idler) combinations within +/- half_window of each
// other, with the idler stream shifted by delay_ps. Tallies by polarization.
void sweep_pairs(const std::vector<Event>& s, const std::vector<Event>& i,
                 double half_window, double delay_ps, uint64_t* total,
                 uint64_t* par, uint64_t* orth) {
  size_t lo = 0;
  for (const auto& es : s) {
    double wlo = es.t_ps - half_window - delay_ps;
    double whi = es.t_ps + half_window - delay_ps;
    while (lo < i.size() && i[lo].t_ps < wlo) ++lo;
    for (size_t k = lo; k < i.size() && i[k].t_ps <= whi; ++k) {
      ++*total;
      if (par && orth) {
        if (es.pol == i[k].pol) {
          ++*par;
        } else {
          ++*orth;
        }
      }
    }
  }
}

}  // namespace

CoincidenceSummary count_coincidences(const EventStream& signal,
                                      const EventStream& idler,
                                      double window_ps, double duration_s,
                                      double delay_ps) {
  CoincidenceSummary out;
  double half = 0.5 * window_ps;
  sweep_pairs(signal.events, idler.events, half, 0.0, &out.pairs_total,
              &out.parallel, &out.orthogonal);
  sweep_pairs(signal.events, idler.events, half, delay_ps, &out.delayed,
              nullptr, nullptr);
  out.ccr_hz = static_cast<double>(out.pairs_total) / duration_s;
  out.accidentals_hz = static_cast<double>(out.delayed) / duration_s;
  double p = static_cast<double>(out.parallel);
  double o = static_cast<double>(out.orthogonal);
  if (p + o > 0.0) {
    out.visibility = (p - o) / (p + o);
    out.visibility_stderr =
        2.0 * std::sqrt(p * o / ((p + o) * (p + o) * (p + o)));
  }
  return out;
}

double nfold_coincidences(const std::vector<const EventStream*>& streams,
                          double window_ps, double duration_s) {
  if (streams.size() < 2) throw DomainError("n-fold needs >= 2 streams");
  double half = 0.5 * window_ps;
  std::vector<size_t> lo(streams.size(), 0);
  double total = 0.0;
  for (const auto& e0 : streams[0]->events) {
    double prod = 1.0;
    for (size_t s = 1; s < streams.size() && prod > 0.0; ++s) {
      const auto& ev = streams[s]->events;
      double wlo = e0.t_ps - half;
      double whi = e0.t_ps + half;
      while (lo[s] < ev.size() && ev[lo[s]].t_ps < wlo) ++lo[s];
      size_t n = 0;
      for (size_t k = lo[s]; k < ev.size() && ev[k].t_ps <= whi; ++k) ++n;
      prod *= static_cast<double>(n);
    }
    total += prod;
  }
  return total / duration_s;
}

CoincidenceSummary run_summary(const SimConfig& config) {
  SimResult sim = simulate_events(config);
  return count_coincidences(sim.signal, sim.idler, config.window_ps,
                            sim.duration_s, sim.pulse_period_ps);
}

EventStream noise_stream(double rate_cps, double duration_s, uint64_t seed,
                         const std::string& arm) {
  EventStream stream;
  stream.arm = arm;
  Rng rng(splitmix64(seed));
  append_noise(&stream.events, &rng, rate_cps, 0.0, duration_s * 1e12,
               Origin::kNoise);
  return stream;
}

}  // namespace qcoex::mc
