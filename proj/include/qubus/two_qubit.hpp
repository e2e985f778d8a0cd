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

#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace qubus {

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };

std::string_view to_string(Bell b);

/// (|00> +- |11>)/sqrt2 and (|01> +- |10>)/sqrt2 in the big-endian |ac> basis.
Eigen::Vector4cd bell_vector(Bell b);

/// Validated two-qubit density matrix: Hermitian and unit trace within 1e-12,
/// eigenvalues >= -1e-10.
class TwoQubitDensity {
 public:
  /// Throws std::invalid_argument when the matrix is not a density matrix.
  explicit TwoQubitDensity(const Eigen::Matrix4cd& m);

  /// Scales by 1/trace before validating.
  static TwoQubitDensity from_unnormalized(const Eigen::Matrix4cd& m);
  static TwoQubitDensity from_pure(const Eigen::Vector4cd& psi);
  static TwoQubitDensity maximally_mixed();

  const Eigen::Matrix4cd& matrix() const { return m_; }
  double purity() const;

 private:
  Eigen::Matrix4cd m_;
};

/// Reasons a matrix fails validation, empty when it is a density matrix.
std::string_view density_defect(const Eigen::Matrix4cd& m);

/// (1/2) * sum |eigenvalues of (a - b)|.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// <psi+|rho|psi+> + <psi-|rho|psi->: the bit-flip weight relative to the even subspace.
double odd_subspace_weight(const TwoQubitDensity& rho);

}  // namespace qubus
