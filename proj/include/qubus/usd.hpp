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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qubus/link.hpp"
#include "qubus/two_qubit.hpp"

namespace qubus {

/// Lower bound on the USD failure probability as a function of the target
/// fidelity: (2F - 1)^(eta / (1 - eta)). F in [1/2, 1], eta in (0, 1).
double usd_failure_bound_from_fidelity(double fidelity, double eta);

/// Optimal failure probability for discriminating |sqrt(eta) alpha> from the
/// equal mixture of its +-theta rotations: exp(-eta alpha^2 (1 - cos theta)).
double usd_optimal_failure(const LinkParams& params);

/// Three-port split |beta,0,0> -> |lambda beta, lambda beta, sqrt(1-2 lambda^2) beta>
/// followed by D(-lambda b+) (x) D(-lambda b-) (x) D(-sqrt(1-2 lambda^2) b0), where
/// b0, b+, b- are the nominal labels of params. Each nominal input maps to a
/// triple with an exact vacuum in at least one port.
std::array<CoherentLabel, 3> receiver_transform(CoherentLabel input, const LinkParams& params);

/// The same receiver acting on mode m of a hybrid state; mode m becomes three
/// modes m, m+1, m+2. Displacement phases are kept in the branch coefficients.
HybridState apply_receiver(const HybridState& state, std::size_t mode, double lambda_bs,
                           const NominalLabels& nominal);

/// Click/no-click outcome of the three receiver detectors.
struct DetectionPattern {
  std::array<bool, 3> clicks{};

  /// Bit m set when detector m clicked.
  int index() const { return (clicks[0] ? 1 : 0) | (clicks[1] ? 2 : 0) | (clicks[2] ? 4 : 0); }
  static DetectionPattern from_index(int index);
  /// "CCN" style: C = click, N = no click, detectors in order.
  std::string to_string() const;
  static std::array<DetectionPattern, 8> all();

  friend bool operator==(const DetectionPattern&, const DetectionPattern&) = default;
};

enum class PatternClass {
  identifies_unrotated,
  identifies_rho2_parity_unknown,
  identifies_plus_theta,
  identifies_minus_theta,
  partially_conclusive,
  inconclusive_vacuum,
  impossible,
};

std::string_view to_string(PatternClass c);
PatternClass classify(DetectionPattern pattern);

struct UsdBudget {
  double p_even = 0.0;
  double p_odd_usd = 0.0;
  double p_odd_ent = 0.0;
  double p_total_usd = 0.0;
  double p_total_ent = 0.0;
};

/// Closed-form success probabilities of the linear-optics receiver.
UsdBudget pattern_probabilities(const LinkParams& params);

/// Pattern distribution for a single coherent input (ideal on/off detectors).
std::array<double, 8> click_distribution(CoherentLabel input, const LinkParams& params);

/// Pattern distribution for the qubus of the link state: prior 1/2 on the
/// unrotated label and 1/4 on each rotated label.
std::array<double, 8> pattern_distribution(const LinkParams& params);

struct ReceiverOptions {
  /// Mode-3 detector resolves photon-number parity on (no, no, click).
  bool parity_resolving = false;
};

struct ParityBranch {
  int parity = 0;  ///< 0: even nonzero photon number, 1: odd
  double probability = 0.0;
  TwoQubitDensity state;
  double fidelity = 0.0;  ///< odd-subspace Bell fidelity after the best local Z phase
};

struct PatternOutcome {
  DetectionPattern pattern;
  PatternClass classification = PatternClass::impossible;
  double probability = 0.0;
  std::optional<TwoQubitDensity> conditional_state;
  std::vector<ParityBranch> parity_branches;
};

/// Classifies the pattern and, where it heralds a two-qubit state, conditions
/// the link state on it through the branch representation.
PatternOutcome classify_and_condition(DetectionPattern pattern, const LinkParams& params,
                                      ReceiverOptions options = {});

/// Unnormalized two-qubit operator left when the link state's receiver modes
/// are measured with the given per-detector elements.
Eigen::Matrix4cd conditioned_link_operator(const LinkParams& params,
                                           const std::array<ModePovm, 3>& detectors);

/// 1/2 (rho_01,01 + rho_10,10) + |rho_01,10|: Bell fidelity within the odd
/// subspace once the relative phase is corrected locally.
double odd_phase_corrected_fidelity(const TwoQubitDensity& rho);

struct HomodyneResult {
  double success_probability = 0.0;
  TwoQubitDensity state;
};

/// p-quadrature outcome of the unrotated qubus label (x = (a + a^dag)/sqrt2).
double homodyne_window_center(const LinkParams& params);

/// Conditions the link state on a p outcome within +-halfwidth of the
/// unrotated label's mean. Vacuum quadrature variance is 1/2.
HomodyneResult homodyne_p_condition(const LinkParams& params, double halfwidth);

}  // namespace qubus
