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

#include "qubus/link.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qubus {

LinkParams LinkParams::with_eta(double alpha, double theta, double eta, double lambda_bs) {
  LinkParams p;
  p.alpha = alpha;
  p.theta = theta;
  p.lambda_bs = lambda_bs;
  p.transmission = eta;
  return p;
}

double transmission_for_distance(double distance_km, double loss_db_per_km) {
  return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

double one_minus_cos(double theta) {
  const double s = std::sin(0.5 * theta);
  return 2.0 * s * s;
}

double LinkParams::eta() const {
  return transmission ? *transmission : transmission_for_distance(distance_km, loss_db_per_km);
}

double LinkParams::xi() const { return alpha * alpha * std::sin(theta); }

double third_port_weight(double lambda_bs) {
  const double w = 1.0 - 2.0 * lambda_bs * lambda_bs;
  return w <= 4.0 * std::numeric_limits<double>::epsilon() ? 0.0 : w;
}

double LinkParams::third_port_amplitude() const { return std::sqrt(third_port_weight(lambda_bs)); }

void LinkParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (!std::isfinite(distance_km) || distance_km < 0.0) {
    throw std::invalid_argument("distance must be finite and >= 0");
  }
  if (!std::isfinite(loss_db_per_km) || loss_db_per_km < 0.0) {
    throw std::invalid_argument("loss per km must be finite and >= 0");
  }
  if (!std::isfinite(lambda_bs) || lambda_bs < 0.0 || 1.0 - 2.0 * lambda_bs * lambda_bs < -1e-15) {
    throw std::invalid_argument("lambda must lie in [0, 1/sqrt2]");
  }
  const double e = eta();
  if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("transmission must lie in (0, 1]");
}

double alpha_for_fidelity(double fidelity, double eta, double theta) {
  if (!(fidelity > 0.5 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in (1/2, 1]");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("fidelity inversion needs 0 < eta < 1");
  }
  const double denom = (1.0 - eta) * one_minus_cos(theta);
  if (!(denom > 0.0)) throw std::invalid_argument("fidelity inversion needs theta != 0");
  return std::sqrt(-std::log(2.0 * fidelity - 1.0) / denom);
}

HybridState qubit_qubus_state(const LinkParams& params) {
  params.validate();
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<HybridKet, 2> terms{{
      {0u, {CoherentLabel(params.alpha)}, {r, 0.0}},
      {1u, {CoherentLabel(params.alpha)}, {r, 0.0}},
  }};
  HybridState s = HybridState::pure(1, 1, terms);
  s = controlled_rotation(s, 0, 0, params.theta);
  return loss_channel(s, 0, params.eta());
}

HybridState build_link_state(const LinkParams& params) {
  params.validate();
  const CoherentLabel probe(params.alpha);
  const std::array<HybridKet, 4> terms{{
      {0u, {probe}, {0.5, 0.0}},
      {1u, {probe}, {0.5, 0.0}},
      {2u, {probe}, {0.5, 0.0}},
      {3u, {probe}, {0.5, 0.0}},
  }};
  const double eta = params.eta();
  const double xi = params.xi();
  HybridState s = HybridState::pure(2, 1, terms);
  s = controlled_rotation(s, 0, 0, params.theta);
  s = loss_channel(s, 0, eta);
  s = controlled_rotation(s, 1, 0, -params.theta);
  Eigen::Matrix2cd phase_a = Eigen::Matrix2cd::Zero();
  phase_a(0, 0) = 1.0;
  phase_a(1, 1) = std::polar(1.0, -xi);
  Eigen::Matrix2cd phase_c = Eigen::Matrix2cd::Zero();
  phase_c(0, 0) = 1.0;
  phase_c(1, 1) = std::polar(1.0, eta * xi);
  s = apply_qubit_gate(s, 0, phase_a);
  s = apply_qubit_gate(s, 1, phase_c);
  return s;
}

NominalLabels nominal_labels(const LinkParams& params) {
  const double keep = std::sqrt(params.eta());
  const cplx a(params.alpha, 0.0);
  return {
      CoherentLabel(a * keep),
      CoherentLabel((a * std::polar(1.0, params.theta)) * keep),
      CoherentLabel((a * keep) * std::polar(1.0, -params.theta)),
  };
}

}  // namespace qubus
