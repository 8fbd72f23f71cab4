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

#include "qcoex/tomo.hpp"

#include <cmath>
#include <complex>
#include <deque>
#include <numbers>
#include <random>

#include "qcoex/errors.hpp"

namespace qcoex::tomo {
namespace {

using Complex = std::complex<double>;

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigTol = -1e-9;

void check_state(const Matrix& m) {
  if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
    throw DomainError("density matrix must be 2x2 or 4x4");
  }
  if ((m - m.adjoint()).norm() >= kHermTol) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > kTraceTol ||
      std::abs(m.trace().imag()) > kTraceTol) {
    throw DomainError("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigTol) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

Vector ket(Pol6 p) {
  Vector v(2);
  const double s = 1.0 / std::numbers::sqrt2;
  switch (p) {
    case Pol6::kH: v << 1.0, 0.0; break;
    case Pol6::kV: v << 0.0, 1.0; break;
    case Pol6::kD: v << s, s; break;
    case Pol6::kA: v << s, -s; break;
    case Pol6::kR: v << s, Complex(0.0, s); break;
    case Pol6::kL: v << s, Complex(0.0, -s); break;
  }
  return v;
}

char pol_char(Pol6 p) {
  switch (p) {
    case Pol6::kH: return 'H';
    case Pol6::kV: return 'V';
    case Pol6::kD: return 'D';
    case Pol6::kA: return 'A';
    case Pol6::kR: return 'R';
    case Pol6::kL: return 'L';
  }
  return '?';
}

Pol6 pol_from_char(char c) {
  switch (c) {
    case 'H': return Pol6::kH;
    case 'V': return Pol6::kV;
    case 'D': return Pol6::kD;
    case 'A': return Pol6::kA;
    case 'R': return Pol6::kR;
    case 'L': return Pol6::kL;
    default: throw ConfigError(std::string("unknown polarization '") + c + "'");
  }
}

Matrix sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const Matrix& m) {
  check_state(m);
  // Re-symmetrize so downstream algebra sees an exactly Hermitian matrix.
  Matrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw DomainError("zero state vector");
  Matrix m = psi * psi.adjoint() / n2;
  return from_matrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim != 2 && dim != 4) throw DomainError("dimension must be 2 or 4");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::bell_phi_plus(double phase_rad) {
  Vector psi(4);
  psi << 1.0, 0.0, 0.0, std::exp(Complex(0.0, phase_rad));
  psi /= std::numbers::sqrt2;
  return pure(psi);
}

DensityMatrix DensityMatrix::werner(double p) {
  if (p < -1.0 / 3.0 || p > 1.0) {
    throw DomainError("Werner parameter outside [-1/3, 1]");
  }
  Matrix m = p * bell_phi_plus().matrix() +
             (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
  return from_matrix(m);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DomainError("fidelity dimension mismatch");
  }
  Matrix sr = sqrt_psd(rho.matrix());
  Matrix inner = sr * sigma.matrix() * sr;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  double f = tr * tr;
  return std::min(1.0, f);
}

double werner_p_from_fidelity(double f) {
  if (f < 0.25 || f > 1.0) {
    throw DomainError("Werner fidelity must lie in [0.25, 1]");
  }
  return (4.0 * f - 1.0) / 3.0;
}

Matrix MeasurementSetting::projector() const {
  if (qubits.empty() || qubits.size() > 2) {
    throw DomainError("settings cover 1 or 2 qubits");
  }
  Vector psi = ket(qubits[0]);
  if (qubits.size() == 2) {
    Vector k2 = ket(qubits[1]);
    Vector joint(4);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) joint(2 * a + b) = psi(a) * k2(b);
    }
    psi = joint;
  }
  return psi * psi.adjoint();
}

std::string MeasurementSetting::label() const {
  std::string s;
  for (Pol6 p : qubits) s.push_back(pol_char(p));
  return s;
}

std::vector<MeasurementSetting> all_settings(int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) {
    throw DomainError("settings defined for 1 or 2 qubits");
  }
  const Pol6 basis[6] = {Pol6::kH, Pol6::kV, Pol6::kD,
                         Pol6::kA, Pol6::kR, Pol6::kL};
  std::vector<MeasurementSetting> out;
  if (n_qubits == 1) {
    for (Pol6 p : basis) out.push_back({{p}});
  } else {
    for (Pol6 p : basis) {
      for (Pol6 q : basis) out.push_back({{p, q}});
    }
  }
  return out;
}

MeasurementSetting setting_from_label(const std::string& label) {
  MeasurementSetting s;
  for (char c : label) s.qubits.push_back(pol_from_char(c));
  if (s.qubits.empty() || s.qubits.size() > 2) {
    throw ConfigError("setting label must have 1 or 2 characters");
  }
  return s;
}

std::vector<CountRecord> expected_counts(
    const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
    double expected_total_per_setting, double noise_floor_per_setting) {
  if (!(expected_total_per_setting > 0.0)) {
    throw DomainError("expected total must be > 0");
  }
  std::vector<CountRecord> out;
  out.reserve(settings.size());
  for (const auto& s : settings) {
    double p = (s.projector() * rho.matrix()).trace().real();
    double mean = expected_total_per_setting * std::max(0.0, p) +
                  noise_floor_per_setting;
    out.push_back({s, mean, 1.0});
  }
  return out;
}

std::vector<CountRecord> simulate_counts(
    const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
    double expected_total_per_setting, double noise_floor_per_setting,
    uint64_t seed) {
  std::vector<CountRecord> out = expected_counts(
      rho, settings, expected_total_per_setting, noise_floor_per_setting);
  std::mt19937_64 gen(seed);
  for (auto& rec : out) {
    std::poisson_distribution<long long> dist(rec.counts);
    rec.counts = static_cast<double>(dist(gen));
  }
  return out;
}

namespace {

// Triangular parameterization: theta holds the d real diagonal entries of a
// lower-triangular T, then (re, im) for each strictly-lower entry, then the
// log of the fitted intensity scale. rho = T T^dag / tr(T T^dag).
struct MleProblem {
  std::vector<Matrix> projectors;
  std::vector<double> counts;
  std::vector<double> seconds;
  int d = 0;

  int n_params() const { return d * d + 1; }

  Matrix build_t(const Eigen::VectorXd& theta) const {
    Matrix t = Matrix::Zero(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) t(i, i) = theta(idx++);
    for (int i = 1; i < d; ++i) {
      for (int j = 0; j < i; ++j) {
        t(i, j) = Complex(theta(idx), theta(idx + 1));
        idx += 2;
      }
    }
    return t;
  }

  // Returns log-likelihood; fills grad if non-null.
  double eval(const Eigen::VectorXd& theta, Eigen::VectorXd* grad) const {
    Matrix t = build_t(theta);
    double log_s = theta(theta.size() - 1);
    double s = std::exp(log_s);
    Matrix tt = t * t.adjoint();
    double norm = tt.trace().real();
    if (!(norm > 0.0)) {
      if (grad) grad->setZero();
      return -1e300;
    }
    Matrix rho = tt / norm;

    double ll = 0.0;
    Matrix g = Matrix::Zero(d, d);
    double dlog_s = 0.0;
    for (size_t j = 0; j < projectors.size(); ++j) {
      double p = (projectors[j] * rho).trace().real();
      double lambda = std::max(s * seconds[j] * std::max(p, 0.0), 1e-300);
      ll += counts[j] * std::log(lambda) - lambda;
      double w = counts[j] / lambda - 1.0;
      if (grad) {
        g += w * s * seconds[j] * projectors[j];
        dlog_s += counts[j] - lambda;
      }
    }
    if (grad) {
      double tr_grho = (g * rho).trace().real();
      Matrix k = (g - tr_grho * Matrix::Identity(d, d)) / norm;
      Matrix kt = k * t;
      grad->resize(theta.size());
      int idx = 0;
      for (int i = 0; i < d; ++i) (*grad)(idx++) = 2.0 * kt(i, i).real();
      for (int i = 1; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
          (*grad)(idx++) = 2.0 * kt(i, j).real();
          (*grad)(idx++) = 2.0 * kt(i, j).imag();
        }
      }
      (*grad)(idx) = dlog_s;
    }
    return ll;
  }
};

void check_informationally_complete(const MleProblem& prob) {
  int d = prob.d;
  int dim2 = d * d;
  Eigen::MatrixXd design(prob.projectors.size(), dim2);
  for (size_t j = 0; j < prob.projectors.size(); ++j) {
    const Matrix& pj = prob.projectors[j];
    int c = 0;
    for (int i = 0; i < d; ++i) design(j, c++) = pj(i, i).real();
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        design(j, c++) = pj(a, b).real();
        design(j, c++) = pj(a, b).imag();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  svd.setThreshold(1e-9);
  if (svd.rank() < dim2) {
    throw DomainError("measurement settings are informationally incomplete");
  }
}

}  // namespace

DensityMatrix mle_reconstruct(const std::vector<CountRecord>& records,
                              int dim, const MleOptions& options) {
  if (dim != 2 && dim != 4) throw DomainError("dimension must be 2 or 4");
  if (records.empty()) throw DomainError("no count records");

  MleProblem prob;
  prob.d = dim;
  double sum_counts = 0.0, sum_seconds = 0.0;
  for (const auto& rec : records) {
    if (rec.counts < 0.0) throw DomainError("counts must be >= 0");
    if (!(rec.seconds > 0.0)) throw DomainError("integration time must be > 0");
    Matrix pj = rec.setting.projector();
    if (pj.rows() != dim) {
      throw DomainError("setting dimension does not match requested state");
    }
    prob.projectors.push_back(std::move(pj));
    prob.counts.push_back(rec.counts);
    prob.seconds.push_back(rec.seconds);
    sum_counts += rec.counts;
    sum_seconds += rec.seconds;
  }
  check_informationally_complete(prob);
  if (!(sum_counts > 0.0)) {
    // No photons at all: no polarization information.
    return DensityMatrix::maximally_mixed(dim);
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(prob.n_params());
  for (int i = 0; i < dim; ++i) theta(i) = 1.0 / std::sqrt(dim);
  theta(prob.n_params() - 1) =
      std::log(dim * sum_counts / std::max(sum_seconds, 1e-300));

  // L-BFGS ascent with backtracking line search.
  const int memory = 10;
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  Eigen::VectorXd grad(prob.n_params()), grad_new(prob.n_params());
  double ll = prob.eval(theta, &grad);
  bool converged = false;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Two-loop recursion on the ascent direction.
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(s_hist.size());
    for (int h = static_cast<int>(s_hist.size()) - 1; h >= 0; --h) {
      double rho_h = 1.0 / y_hist[h].dot(s_hist[h]);
      alpha[h] = rho_h * s_hist[h].dot(q);
      q -= alpha[h] * y_hist[h];
    }
    if (!s_hist.empty()) {
      const auto& s_last = s_hist.back();
      const auto& y_last = y_hist.back();
      q *= s_last.dot(y_last) / y_last.dot(y_last);
    }
    for (size_t h = 0; h < s_hist.size(); ++h) {
      double rho_h = 1.0 / y_hist[h].dot(s_hist[h]);
      double beta = rho_h * y_hist[h].dot(q);
      q += (alpha[h] - beta) * s_hist[h];
    }
    Eigen::VectorXd dir = q;  // ascent direction
    double slope = grad.dot(dir);
    if (slope <= 0.0) {
      dir = grad;
      slope = grad.squaredNorm();
    }
    if (slope <= 0.0) {
      converged = true;
      break;
    }

    double step = 1.0;
    double ll_new = -1e300;
    Eigen::VectorXd theta_new;
    bool improved = false;
    for (int ls = 0; ls < 60; ++ls) {
      theta_new = theta + step * dir;
      ll_new = prob.eval(theta_new, &grad_new);
      if (ll_new >= ll + 1e-4 * step * slope) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;  // line search exhausted: stationary to precision
      break;
    }

    Eigen::VectorXd s_vec = theta_new - theta;
    Eigen::VectorXd y_vec = grad - grad_new;  // ascent: curvature sign flips
    if (s_vec.dot(y_vec) > 1e-14) {
      s_hist.push_back(s_vec);
      y_hist.push_back(y_vec);
      if (static_cast<int>(s_hist.size()) > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    double improvement = ll_new - ll;
    theta = std::move(theta_new);
    grad = grad_new;
    ll = ll_new;
    if (improvement < options.tolerance * (1.0 + std::abs(ll))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError(
        "tomography MLE did not converge; last log-likelihood " +
        std::to_string(ll));
  }

  Matrix t = prob.build_t(theta);
  Matrix tt = t * t.adjoint();
  Matrix rho = tt / tt.trace().real();

  // Fixed-point polish. At the Poisson MLE, with the intensity scale held at
  // its conditional optimum, rho satisfies R rho R = rho with R built from
  // the count/prediction ratios. The quasi-Newton phase gets close; this
  // drives the stationarity residual to machine precision.
  bool equal_seconds = true;
  for (double sec : prob.seconds) {
    if (sec != prob.seconds.front()) equal_seconds = false;
  }
  Matrix proj_sum = Matrix::Zero(dim, dim);
  for (const auto& pj : prob.projectors) proj_sum += pj;
  double iso = proj_sum.trace().real() / dim;
  bool isotropic =
      (proj_sum - iso * Matrix::Identity(dim, dim)).norm() < 1e-9;

  const int polish_cap = (equal_seconds && isotropic) ? 50000 : 0;
  for (int iter = 0; iter < polish_cap; ++iter) {
    double denom = 0.0;
    std::vector<double> p(prob.projectors.size());
    for (size_t j = 0; j < prob.projectors.size(); ++j) {
      p[j] = std::max((prob.projectors[j] * rho).trace().real(), 1e-300);
      denom += prob.seconds[j] * p[j];
    }
    double s = sum_counts / denom;
    Matrix r = Matrix::Zero(dim, dim);
    for (size_t j = 0; j < prob.projectors.size(); ++j) {
      r += (prob.counts[j] / (s * p[j])) * prob.projectors[j];
    }
    r /= sum_counts / s;  // normalized: r == identity at the fixed point
    Matrix next = r * rho * r;
    next /= next.trace().real();
    double delta = (next - rho).norm();
    rho = 0.5 * (next + next.adjoint());
    if (delta < 1e-13) break;
  }
  return DensityMatrix::from_matrix(rho);
}

double noise_fraction(const rates::RatePrediction& prediction) {
  double noisy = 2.0 * prediction.multipair_orthogonal +
                 2.0 * prediction.accidentals;
  double total = prediction.true_coincidences + noisy;
  if (!(total > 0.0)) {
    throw DomainError("noise fraction undefined: zero total rate");
  }
  return noisy / total;
}

DensityMatrix coexistence_state(const DensityMatrix& rho_dark,
                                const rates::RatePrediction& prediction) {
  if (rho_dark.dim() != 4) {
    throw DomainError("coexistence state requires a 2-qubit dark state");
  }
  double eps = noise_fraction(prediction);
  Matrix m = (1.0 - eps) * rho_dark.matrix() +
             eps * Matrix::Identity(4, 4) / 4.0;
  return DensityMatrix::from_matrix(m);
}

}  // namespace qcoex::tomo
