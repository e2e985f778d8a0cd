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

#include <cmath>
#include <numbers>

#include "qubus/fock_oracle.hpp"

namespace qubus::oracle {
namespace {

struct Constellation {
  cplx unrotated;
  cplx plus;
  cplx minus;
};

Constellation constellation(const LinkParams& p) {
  const double b = std::sqrt(p.eta()) * p.alpha;
  return {b, std::polar(b, p.theta), std::polar(b, -p.theta)};
}

// Largest amplitude any receiver mode carries for inputs on the constellation circle.
double receiver_amplitude(double input, const LinkParams& p) {
  const Constellation c = constellation(p);
  const double lam = p.lambda_bs;
  const double t3 = std::sqrt(third_port_weight(lam));
  const double shifted = std::max({lam * (input + std::abs(c.plus)), t3 * (input + std::abs(c.unrotated))});
  return std::max(input, shifted);
}

Eigen::Matrix2cd diag_phase(double phase) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, phase);
  return m;
}

const cplx kHalf[4] = {0.5, 0.5, 0.5, 0.5};
const cplx kPlus[2] = {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};

FockMixture truncated(FockMixture rho, std::size_t mode, std::size_t N) {
  for (auto& c : rho.components) resize_mode(c, mode, N);
  return rho;
}

}  // namespace

std::array<double, 8> click_distribution(CoherentLabel input, const LinkParams& params) {
  params.validate();
  const Constellation c = constellation(params);
  const double in = std::abs(input.value());
  FockVector v = prepare_coherent(input, truncation_for(in));
  apply_receiver(v, 0, params.lambda_bs, c.unrotated, c.plus, c.minus,
                 truncation_for(receiver_amplitude(in, params)));
  return onoff_pattern_distribution(v, 0);
}

std::array<double, 8> pattern_distribution(const LinkParams& params) {
  const Constellation c = constellation(params);
  const auto d0 = oracle::click_distribution(CoherentLabel(c.unrotated), params);
  const auto dp = oracle::click_distribution(CoherentLabel(c.plus), params);
  const auto dm = oracle::click_distribution(CoherentLabel(c.minus), params);
  std::array<double, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) out[i] = 0.5 * d0[i] + 0.25 * dp[i] + 0.25 * dm[i];
  return out;
}

FockMixture qubit_qubus_state(const LinkParams& params) {
  params.validate();
  FockVector v = tensor(qubit_register(1, kPlus), prepare_coherent(CoherentLabel(params.alpha),
                                                                   truncation_for(params.alpha)));
  apply_controlled_rotation(v, 0, 0, params.theta);
  const FockMixture lossy = apply_loss(FockMixture::pure(std::move(v)), 0, params.eta());
  return truncated(lossy, 0, truncation_for(std::sqrt(params.eta()) * params.alpha));
}

FockMixture link_state(const LinkParams& params) {
  params.validate();
  const double eta = params.eta();
  const double xi = params.alpha * params.alpha * std::sin(params.theta);
  // Qubits A, C in |+>|+>, qubus |alpha>.
  FockVector v = tensor(qubit_register(2, kHalf),
                        prepare_coherent(CoherentLabel(params.alpha), truncation_for(params.alpha)));
  apply_controlled_rotation(v, 0, 0, params.theta);
  FockMixture rho = apply_loss(FockMixture::pure(std::move(v)), 0, eta);
  rho = truncated(std::move(rho), 0, truncation_for(std::sqrt(eta) * params.alpha));
  for (auto& c : rho.components) {
    apply_controlled_rotation(c, 1, 0, -params.theta);
    apply_qubit_gate(c, 0, diag_phase(-xi));
    apply_qubit_gate(c, 1, diag_phase(eta * xi));
  }
  return rho;
}

Eigen::Matrix4cd conditioned_link_operator(const LinkParams& params,
                                           const std::array<ModeElement, 3>& detectors) {
  const Constellation c = constellation(params);
  FockMixture rho = link_state(params);
  const std::size_t N = truncation_for(receiver_amplitude(std::abs(c.unrotated), params));
  const auto d = receiver_displacements(params.lambda_bs, c.unrotated, c.plus, c.minus);
  for (auto& comp : rho.components) {
    split_receiver(comp, 0, params.lambda_bs);
    // A no-click detector behind D(d) only sees <0|D(d); contracting those
    // modes first keeps the displaced tensor small.
    for (std::size_t m = 0; m < 3; ++m) {
      if (detectors[m].kind != ModeElement::Kind::vacuum) continue;
      const std::size_t axis = comp.mode_axis(m);
      apply_axis_matrix(comp, axis, displacement_matrix(comp.dims[axis], d[m]).topRows(1));
    }
    for (std::size_t m = 0; m < 3; ++m) {
      if (detectors[m].kind == ModeElement::Kind::vacuum) continue;
      resize_mode(comp, m, std::max(N, comp.dims[comp.mode_axis(m)] - 1));
      apply_displacement(comp, m, d[m]);
    }
  }
  for (std::size_t m = 0; m < 3; ++m) {
    if (detectors[m].kind != ModeElement::Kind::vacuum) rho = apply_element(rho, m, detectors[m]);
  }
  return reduced_qubits(rho);
}

Eigen::Matrix4cd homodyne_link_operator(const LinkParams& params, double center, double halfwidth) {
  const FockMixture rho = apply_element(link_state(params), 0, ModeElement::p_window(center, halfwidth));
  return reduced_qubits(rho);
}

std::vector<SwapBranch> homodyne_swap(const LinkParams& params, double center, double halfwidth) {
  const FockMixture link = oracle::qubit_qubus_state(params);
  // Qubits [1, 3], modes [2, 4].
  const FockMixture joint = tensor(link, link);
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::numbers::sqrt2;
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;

  FockMixture rotated = joint;
  for (auto& c : rotated.components) {
    apply_controlled_rotation(c, 1, 0, -params.theta);
    apply_qubit_gate(c, 1, h);
  }
  std::vector<SwapBranch> out;
  for (int bit = 0; bit < 2; ++bit) {
    FockMixture s = project_qubit(rotated, 1, bit);
    s = apply_element(s, 0, ModeElement::p_window(center, halfwidth));
    s = trace_mode(s, 0);
    if (bit == 1) {
      for (auto& c : s.components) apply_qubit_gate(c, 0, z);
    }
    const double p = s.trace();
    out.push_back({bit, p, std::move(s)});
  }
  return out;
}

}  // namespace qubus::oracle
