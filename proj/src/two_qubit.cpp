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

#include "qubus/two_qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qubus {

std::string_view to_string(Bell b) {
  switch (b) {
    case Bell::phi_plus: return "phi+";
    case Bell::phi_minus: return "phi-";
    case Bell::psi_plus: return "psi+";
    case Bell::psi_minus: return "psi-";
  }
  return "?";
}

Eigen::Vector4cd bell_vector(Bell b) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (b) {
    case Bell::phi_plus: v(0) = r; v(3) = r; break;
    case Bell::phi_minus: v(0) = r; v(3) = -r; break;
    case Bell::psi_plus: v(1) = r; v(2) = r; break;
    case Bell::psi_minus: v(1) = r; v(2) = -r; break;
  }
  return v;
}

std::string_view density_defect(const Eigen::Matrix4cd& m) {
  if (!m.allFinite()) return "non-finite entries";
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return "not Hermitian";
  if (std::abs(m.trace() - std::complex<double>(1.0, 0.0)) > 1e-12) return "trace differs from 1";
  const Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) return "negative eigenvalue";
  return {};
}

TwoQubitDensity::TwoQubitDensity(const Eigen::Matrix4cd& m) : m_(m) {
  if (const auto why = density_defect(m); !why.empty()) {
    throw std::invalid_argument("invalid two-qubit density matrix: " + std::string(why));
  }
}

TwoQubitDensity TwoQubitDensity::from_unnormalized(const Eigen::Matrix4cd& m) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw std::domain_error("matrix has non-positive trace");
  Eigen::Matrix4cd n = m / tr;
  // Remove rounding-level anti-Hermitian parts left by the division.
  n = 0.5 * (n + n.adjoint()).eval();
  return TwoQubitDensity(n);
}

TwoQubitDensity TwoQubitDensity::from_pure(const Eigen::Vector4cd& psi) {
  return from_unnormalized(psi * psi.adjoint());
}

TwoQubitDensity TwoQubitDensity::maximally_mixed() {
  return TwoQubitDensity(Eigen::Matrix4cd::Identity() / 4.0);
}

double TwoQubitDensity::purity() const { return (m_ * m_).trace().real(); }

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double odd_subspace_weight(const TwoQubitDensity& rho) {
  // psi+ and psi- span {|01>, |10>}; their summed weight is the diagonal there.
  return rho.matrix()(1, 1).real() + rho.matrix()(2, 2).real();
}

}  // namespace qubus
