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
// Projective tomography simulation, maximum-likelihood state reconstruction,
// and fidelity/purity/noise-mixture computations for 1- and 2-qubit states.

#ifndef QCOEX_TOMO_HPP_
#define QCOEX_TOMO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcoex/rates.hpp"

namespace qcoex::tomo {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Hermitian, unit-trace, positive-semidefinite matrix of dimension 2 or 4.
// Construction validates the invariants (Hermiticity 1e-10, trace 1e-10,
// min eigenvalue >= -1e-9).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix& m);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix bell_phi_plus(double phase_rad = 0.0);
  // p * |Phi+><Phi+| + (1-p) * I/4.
  static DensityMatrix werner(double p);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

double purity(const DensityMatrix& rho);
// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Werner parameter reproducing a target fidelity to |Phi+>: F = (1+3p)/4.
double werner_p_from_fidelity(double f);

enum class Pol6 : uint8_t { kH, kV, kD, kA, kR, kL };

struct MeasurementSetting {
  std::vector<Pol6> qubits;  // one entry per qubit

  Matrix projector() const;  // rank-1, normalized
  std::string label() const;
};

// 6 settings for 1 qubit; all 36 ordered pairs for 2 qubits.
std::vector<MeasurementSetting> all_settings(int n_qubits);
MeasurementSetting setting_from_label(const std::string& label);

struct CountRecord {
  MeasurementSetting setting;
  double counts = 0.0;  // observed counts (integer when Poisson-sampled)
  double seconds = 1.0;
};

// Poisson counts with mean total*tr(P rho) + noise_floor per setting.
std::vector<CountRecord> simulate_counts(
    const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
    double expected_total_per_setting, double noise_floor_per_setting,
    uint64_t seed);

// Noise-free expected counts (exact means, no sampling).
std::vector<CountRecord> expected_counts(
    const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
    double expected_total_per_setting, double noise_floor_per_setting = 0.0);

struct MleOptions {
  int max_iterations = 10000;
  double tolerance = 1e-10;  // log-likelihood improvement per iteration
};

// Poisson-likelihood MLE over physical states via a triangular
// factorization; throws ConvergenceError if the iteration budget runs out.
DensityMatrix mle_reconstruct(const std::vector<CountRecord>& records,
                              int dim, const MleOptions& options = {});

// Fraction of coincidences involving at least one noise or extra-pair
// photon; these contribute an unpolarized I/4 admixture.
double noise_fraction(const rates::RatePrediction& prediction);

// rho_coex = (1 - eps) rho_dark + eps I/4.
DensityMatrix coexistence_state(const DensityMatrix& rho_dark,
                                const rates::RatePrediction& prediction);

}  // namespace qcoex::tomo

#endif  // QCOEX_TOMO_HPP_
