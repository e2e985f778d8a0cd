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

#include <optional>

#include "qubus/hybrid_state.hpp"

namespace qubus {

inline constexpr double kDefaultLossDbPerKm = 0.18;

/// One elementary repeater link: probe amplitude, controlled phase, channel,
/// and the receiver beam-splitter parameter.
struct LinkParams {
  double alpha = 0.0;         ///< real probe amplitude, sqrt(photons)
  double theta = 0.01;        ///< controlled-rotation angle, radians
  double distance_km = 0.0;
  double loss_db_per_km = kDefaultLossDbPerKm;
  double lambda_bs = 0.0;     ///< receiver splitting, 0 <= lambda <= 1/sqrt2
  /// Overrides the distance-derived transmission when set.
  std::optional<double> transmission;

  static LinkParams with_eta(double alpha, double theta, double eta, double lambda_bs = 0.0);

  /// eta = 10^(-loss * distance / 10), or the override.
  double eta() const;
  /// xi = alpha^2 sin(theta).
  double xi() const;
  /// sqrt(1 - 2 lambda^2), clamped at zero for lambda = 1/sqrt2 up to rounding.
  double third_port_amplitude() const;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

double transmission_for_distance(double distance_km, double loss_db_per_km = kDefaultLossDbPerKm);

/// 1 - 2 lambda^2, the power fraction sent to the third receiver port. The
/// double nearest 1/sqrt2 squares to 0.4999999999999999, so results within a
/// few ulps of zero are returned as exactly zero.
double third_port_weight(double lambda_bs);

/// 1 - cos(theta) without cancellation.
double one_minus_cos(double theta);

/// Amplitude giving fidelity F = mu_E^2 at this transmission and angle:
/// alpha^2 = -ln(2F - 1) / ((1 - eta)(1 - cos theta)). Requires 1/2 < F <= 1, eta < 1.
double alpha_for_fidelity(double fidelity, double eta, double theta);

/// (|0>|alpha> + |1>|alpha e^{i theta}>)/sqrt2 after the lossy channel: 1 qubit, 1 mode.
HybridState qubit_qubus_state(const LinkParams& params);

/// Qubit A, qubus, qubit C after rotation(+theta) on A, loss, rotation(-theta) on C
/// and the local phase corrections diag(1, e^{-i xi}) on A and diag(1, e^{i eta xi}) on C.
/// The result is mu_E^2 |Phi+><Phi+| + (1 - mu_E^2)|Phi-><Phi-| exactly.
HybridState build_link_state(const LinkParams& params);

/// Nominal qubus labels {sqrt(eta) alpha, sqrt(eta) alpha e^{+i theta}, sqrt(eta) alpha e^{-i theta}},
/// evaluated in the same operation order as build_link_state so labels match bit for bit.
struct NominalLabels {
  CoherentLabel unrotated;
  CoherentLabel plus;
  CoherentLabel minus;
};
NominalLabels nominal_labels(const LinkParams& params);

}  // namespace qubus
