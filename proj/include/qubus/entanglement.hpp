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

#include "qubus/link.hpp"
#include "qubus/two_qubit.hpp"

namespace qubus {

/// Closed-form link quantities of the qubit-qubus-qubit state.
struct LinkQuantities {
  double mu_B = 1.0;
  double nu_B = 0.0;
  double mu_E = 1.0;
  double nu_E = 0.0;
  double fidelity_F = 1.0;  ///< mu_E^2
  double xi = 0.0;          ///< alpha^2 sin(theta)
};

/// mu_B = sqrt(1 + exp(-eta alpha^2 (1 - cos theta)))/sqrt2,
/// mu_E = sqrt(1 + exp(-(1 - eta) alpha^2 (1 - cos theta)))/sqrt2.
LinkQuantities link_quantities(const LinkParams& params);

/// Wootters concurrence, from the eigenvalues of sqrt(rho) rho~ sqrt(rho)
/// with rho~ = (Y (x) Y) rho* (Y (x) Y).
double concurrence(const TwoQubitDensity& rho);

/// h((1 + sqrt(1 - C^2))/2), h the binary entropy in bits.
double eof_from_concurrence(double c);
double entanglement_of_formation(const TwoQubitDensity& rho);

double bell_fidelity(const TwoQubitDensity& rho, Bell which);

/// EoF of the qubit-qubus state, treating the qubus span as an effective qubit.
double qubit_qubus_eof(const LinkParams& params);

}  // namespace qubus
