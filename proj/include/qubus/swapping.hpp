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
#include <random>
#include <string_view>
#include <vector>

#include "qubus/link.hpp"
#include "qubus/two_qubit.hpp"

namespace qubus {

/// (|0>|b> +- |1>|b e^{i theta}>)/sqrt2 (pair one) and
/// (|0>|b e^{i theta}> +- |1>|b>)/sqrt2 (pair two).
enum class HybridBell { pair1_plus, pair1_minus, pair2_plus, pair2_minus };

std::string_view to_string(HybridBell kind);

std::vector<HybridKet> hybrid_bell_ket(HybridBell kind, CoherentLabel base, double theta);
HybridState hybrid_bell_state(HybridBell kind, CoherentLabel base, double theta);

enum class Discriminator { p_homodyne, usd_unrotated };

std::string_view to_string(Discriminator d);

/// How the qubus half of a hybrid Bell measurement is read out.
struct BellMeasurement {
  Discriminator discriminator = Discriminator::usd_unrotated;
  double theta = 0.0;
  double lambda_bs = 0.7;
  CoherentLabel unrotated;         ///< label the qubus carries in the unrotated branch
  double homodyne_halfwidth = 1.0;
  /// Also identify the second Bell pair through mode-3 parity resolution.
  bool ideal_number_resolving = false;

  /// Receiver set up for a link's lossy qubus: unrotated label sqrt(eta) alpha.
  static BellMeasurement for_link(const LinkParams& params, Discriminator d,
                                  double homodyne_halfwidth = 1.0);
};

/// One heralded outcome of the hybrid Bell measurement.
struct BellBranch {
  int qubit_bit = 0;
  HybridBell identified = HybridBell::pair1_plus;
  double probability = 0.0;
  HybridState post_state{0, 0};  ///< normalized, measured qubit and mode removed
};

struct BellAnalysis {
  std::vector<BellBranch> branches;
  double success_probability = 0.0;
};

/// Controlled rotation |1>|b> -> |1>|b e^{-i theta}> on (qubit, mode), Hadamard
/// on the qubit, computational-basis qubit readout and the qubus discriminator.
/// Success means the unrotated qubus label was identified (or, with ideal
/// number resolution, the rotated pair was projected coherently).
BellAnalysis analyze_hybrid_bell(const HybridState& state, std::size_t qubit, std::size_t mode,
                                 const BellMeasurement& cfg);

struct SwapOutcome {
  bool success = false;
  std::optional<HybridBell> identified_pair;
  std::optional<HybridState> post_state;
  /// qubit readout bit, then 1 for a conclusive qubus result / 0 otherwise.
  std::vector<int> classical_bits;
  double success_probability = 0.0;
};

/// Samples one run of the hybrid Bell measurement.
SwapOutcome hybrid_bell_measure(const HybridState& state, std::size_t qubit, std::size_t mode,
                                const BellMeasurement& cfg, std::mt19937_64& rng);

struct SwapBranch {
  BellBranch measurement;
  HybridState heralded{0, 0};  ///< qubit 1 and mode 4 after the sign correction
  HybridBell best_match = HybridBell::pair1_plus;
  double bell_fidelity = 0.0;
};

struct SwapAnalysis {
  std::vector<SwapBranch> branches;
  double success_probability = 0.0;
};

/// left on (qubit 1, mode 2), right on (qubit 3, mode 4). Bell measurement on
/// (3, 2); a readout bit of 1 is undone by Z on qubit 1.
SwapAnalysis analyze_swap(const HybridState& left, const HybridState& right,
                          const BellMeasurement& cfg, CoherentLabel output_base);

SwapOutcome entanglement_swap(const HybridState& left, const HybridState& right,
                              const BellMeasurement& cfg, CoherentLabel output_base,
                              std::mt19937_64& rng);

/// Largest <B|rho|B> over the four hybrid Bell states built on `base`.
std::pair<HybridBell, double> best_hybrid_bell_fidelity(const HybridState& state, CoherentLabel base,
                                                        double theta);

/// Concurrence of a 1-qubit, 1-mode state with the mode taken as an effective qubit.
double hybrid_concurrence(const HybridState& state);

struct ConversionResult {
  double probability = 0.0;
  std::optional<TwoQubitDensity> state;
};

/// Hybrid pair to two-qubit pair: a fresh qubit in |+> rotates the qubus by
/// -theta and the receiver heralds the unrotated label (click, click, no click).
ConversionResult convert_to_two_qubit(const HybridState& hybrid, const BellMeasurement& cfg);

enum class LinkScheme { even, odd_ent, total_usd, homodyne };

std::string_view to_string(LinkScheme s);

struct LinkStatistics {
  double success_probability = 0.0;
  double expected_attempts = 0.0;
  double fidelity = 0.0;
};

/// Per-attempt success probability, 1/P and the heralded-state fidelity for one
/// elementary link. Throws std::domain_error when P = 0.
LinkStatistics link_attempt_statistics(const LinkParams& params, LinkScheme scheme,
                                       double homodyne_halfwidth = 1.0);

}  // namespace qubus
