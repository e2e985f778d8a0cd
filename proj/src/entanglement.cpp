// Copyright 2026 The Qubus Repeater Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qubus/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qubus {
namespace {

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace

LinkQuantities link_quantities(const LinkParams& params) {
  params.validate();
  const double eta = params.eta();
  const double a2 = params.alpha * params.alpha;
  const double omc = one_minus_cos(params.theta);
  LinkQuantities q;
  const double overlap_b = std::exp(-eta * a2 * omc);
  const double overlap_e = std::exp(-(1.0 - eta) * a2 * omc);
  q.mu_B = std::sqrt(1.0 + overlap_b) / std::numbers::sqrt2;
  q.mu_E = std::sqrt(1.0 + overlap_e) / std::numbers::sqrt2;
  // 1 - mu^2 = (1 - overlap)/2, evaluated with expm1 for small alpha.
  q.nu_B = std::sqrt(-0.5 * std::expm1(-eta * a2 * omc));
  q.nu_E = std::sqrt(-0.5 * std::expm1(-(1.0 - eta) * a2 * omc));
  q.fidelity_F = 0.5 * (1.0 + overlap_e);
  q.xi = params.xi();
  return q;
}

double concurrence(const TwoQubitDensity& rho) {
  // With rho = X X^dagger the Wootters lambdas are the singular values of
  // X^T Y X. Working from the factor avoids square roots of roundoff in the
  // null space, which would otherwise leave ~1e-8 residues on rank-deficient
  // input.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  const Eigen::Vector4d w = es.eigenvalues();
  const double cutoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(w.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::Matrix4cd x = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) {
    if (w(k) > cutoff) x.col(k) = es.eigenvectors().col(k) * std::sqrt(w(k));
  }
  const Eigen::Matrix4cd tau = x.transpose() * spin_flip() * x;
  Eigen::Vector4d lam = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double eof_from_concurrence(double c) {
  const double cc = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - cc * cc)));
}

double entanglement_of_formation(const TwoQubitDensity& rho) {
  return eof_from_concurrence(concurrence(rho));
}

double bell_fidelity(const TwoQubitDensity& rho, Bell which) {
  const Eigen::Vector4cd v = bell_vector(which);
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double qubit_qubus_eof(const LinkParams& params) {
  const HybridState s = qubit_qubus_state(params);
  return entanglement_of_formation(TwoQubitDensity::from_unnormalized(qubit_mode_density(s)));
}

}  // namespace qubus
