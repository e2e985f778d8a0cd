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

#include "qubus/swapping.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qubus/entanglement.hpp"
#include "qubus/usd.hpp"

namespace qubus {
namespace {

Eigen::Matrix2cd hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  return h;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

NominalLabels constellation(const BellMeasurement& cfg) {
  const cplx b = cfg.unrotated.value();
  return {cfg.unrotated, CoherentLabel(b * std::polar(1.0, cfg.theta)),
          CoherentLabel(b * std::polar(1.0, -cfg.theta))};
}

// Receiver on `mode`, then the three detectors; returns the unnormalized remainder.
HybridState detect(const HybridState& s, std::size_t mode, const BellMeasurement& cfg,
                   const std::array<ModePovm, 3>& detectors) {
  HybridState r = apply_receiver(s, mode, cfg.lambda_bs, constellation(cfg));
  for (std::size_t m = 3; m-- > 0;) r = measure_mode(r, mode + m, detectors[m]);
  return r;
}

}  // namespace

std::string_view to_string(HybridBell kind) {
  switch (kind) {
    case HybridBell::pair1_plus: return "pair1+";
    case HybridBell::pair1_minus: return "pair1-";
    case HybridBell::pair2_plus: return "pair2+";
    case HybridBell::pair2_minus: return "pair2-";
  }
  return "?";
}

std::string_view to_string(Discriminator d) {
  return d == Discriminator::p_homodyne ? "p_homodyne" : "usd_unrotated";
}

std::string_view to_string(LinkScheme s) {
  switch (s) {
    case LinkScheme::even: return "even";
    case LinkScheme::odd_ent: return "odd_ent";
    case LinkScheme::total_usd: return "total_usd";
    case LinkScheme::homodyne: return "homodyne";
  }
  return "?";
}

std::vector<HybridKet> hybrid_bell_ket(HybridBell kind, CoherentLabel base, double theta) {
  const double r = 1.0 / std::numbers::sqrt2;
  const CoherentLabel rotated(base.value() * std::polar(1.0, theta));
  const double sign =
      (kind == HybridBell::pair1_minus || kind == HybridBell::pair2_minus) ? -1.0 : 1.0;
  const bool first = kind == HybridBell::pair1_plus || kind == HybridBell::pair1_minus;
  return {
      {0u, {first ? base : rotated}, {r, 0.0}},
      {1u, {first ? rotated : base}, {sign * r, 0.0}},
  };
}

HybridState hybrid_bell_state(HybridBell kind, CoherentLabel base, double theta) {
  const auto ket = hybrid_bell_ket(kind, base, theta);
  return HybridState::pure(1, 1, ket);
}

BellMeasurement BellMeasurement::for_link(const LinkParams& params, Discriminator d,
                                          double homodyne_halfwidth) {
  params.validate();
  BellMeasurement cfg;
  cfg.discriminator = d;
  cfg.theta = params.theta;
  cfg.lambda_bs = params.lambda_bs;
  cfg.unrotated = nominal_labels(params).unrotated;
  cfg.homodyne_halfwidth = homodyne_halfwidth;
  return cfg;
}

BellAnalysis analyze_hybrid_bell(const HybridState& state, std::size_t qubit, std::size_t mode,
                                 const BellMeasurement& cfg) {
  if (qubit >= state.num_qubits() || mode >= state.num_modes()) {
    throw std::out_of_range("Bell measurement indices out of range");
  }
  HybridState s = controlled_rotation(state, qubit, mode, -cfg.theta);
  s = apply_qubit_gate(s, qubit, hadamard());

  BellAnalysis out;
  for (int bit = 0; bit < 2; ++bit) {
    const HybridState projected = project_qubit(s, qubit, bit);
    auto record = [&](const HybridState& remainder, HybridBell kind) {
      const double p = remainder.trace().real();
      if (!(p > 0.0)) return;
      out.branches.push_back({bit, kind, p, normalized(remainder)});
      out.success_probability += p;
    };
    if (cfg.discriminator == Discriminator::p_homodyne) {
      const double center = std::numbers::sqrt2 * cfg.unrotated.value().imag();
      record(measure_mode(projected, mode, ModePovm::p_window(center, cfg.homodyne_halfwidth)),
             bit == 0 ? HybridBell::pair1_plus : HybridBell::pair1_minus);
      continue;
    }
    record(detect(projected, mode, cfg, {ModePovm::click(), ModePovm::click(), ModePovm::vacuum()}),
           bit == 0 ? HybridBell::pair1_plus : HybridBell::pair1_minus);
    if (cfg.ideal_number_resolving) {
      // Even cat <-> qubit 0 for the + member of pair two; the odd cat flips it.
      for (int parity = 0; parity < 2; ++parity) {
        const ModePovm third = parity == 0 ? ModePovm::even_nonvacuum() : ModePovm::parity_odd();
        const bool plus = (bit ^ parity) == 0;
        record(detect(projected, mode, cfg, {ModePovm::vacuum(), ModePovm::vacuum(), third}),
               plus ? HybridBell::pair2_plus : HybridBell::pair2_minus);
      }
    }
  }
  return out;
}

SwapOutcome hybrid_bell_measure(const HybridState& state, std::size_t qubit, std::size_t mode,
                                const BellMeasurement& cfg, std::mt19937_64& rng) {
  const BellAnalysis a = analyze_hybrid_bell(state, qubit, mode, cfg);
  SwapOutcome out;
  out.success_probability = a.success_probability;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u = uniform(rng);
  for (const auto& b : a.branches) {
    if (u < b.probability) {
      out.success = true;
      out.identified_pair = b.identified;
      out.post_state = b.post_state;
      out.classical_bits = {b.qubit_bit, 1};
      return out;
    }
    u -= b.probability;
  }
  // Failure: the qubit bit is still read out, with its marginal probability.
  const HybridState rotated =
      apply_qubit_gate(controlled_rotation(state, qubit, mode, -cfg.theta), qubit, hadamard());
  const double p0 = project_qubit(rotated, qubit, 0).trace().real() / rotated.trace().real();
  out.classical_bits = {uniform(rng) < p0 ? 0 : 1, 0};
  return out;
}

std::pair<HybridBell, double> best_hybrid_bell_fidelity(const HybridState& state, CoherentLabel base,
                                                        double theta) {
  std::pair<HybridBell, double> best{HybridBell::pair1_plus, -1.0};
  for (auto kind : {HybridBell::pair1_plus, HybridBell::pair1_minus, HybridBell::pair2_plus,
                    HybridBell::pair2_minus}) {
    const auto ket = hybrid_bell_ket(kind, base, theta);
    const double f = expectation(state, ket).real();
    if (f > best.second) best = {kind, f};
  }
  return best;
}

double hybrid_concurrence(const HybridState& state) {
  return concurrence(TwoQubitDensity::from_unnormalized(qubit_mode_density(normalized(state))));
}

SwapAnalysis analyze_swap(const HybridState& left, const HybridState& right,
                          const BellMeasurement& cfg, CoherentLabel output_base) {
  if (left.num_qubits() != 1 || left.num_modes() != 1 || right.num_qubits() != 1 ||
      right.num_modes() != 1) {
    throw std::invalid_argument("swap inputs must each be one qubit and one mode");
  }
  // Qubits [1, 3], modes [2, 4].
  const HybridState joint = tensor(left, right);
  const BellAnalysis bell = analyze_hybrid_bell(joint, 1, 0, cfg);
  SwapAnalysis out;
  out.success_probability = bell.success_probability;
  for (const auto& b : bell.branches) {
    SwapBranch sb{b, b.post_state, HybridBell::pair1_plus, 0.0};
    if (b.identified == HybridBell::pair1_minus) {
      sb.heralded = apply_qubit_gate(b.post_state, 0, pauli_z());
    }
    std::tie(sb.best_match, sb.bell_fidelity) =
        best_hybrid_bell_fidelity(sb.heralded, output_base, cfg.theta);
    out.branches.push_back(std::move(sb));
  }
  return out;
}

SwapOutcome entanglement_swap(const HybridState& left, const HybridState& right,
                              const BellMeasurement& cfg, CoherentLabel output_base,
                              std::mt19937_64& rng) {
  const SwapAnalysis a = analyze_swap(left, right, cfg, output_base);
  SwapOutcome out;
  out.success_probability = a.success_probability;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u = uniform(rng);
  for (const auto& b : a.branches) {
    if (u < b.measurement.probability) {
      out.success = true;
      out.identified_pair = b.measurement.identified;
      out.post_state = b.heralded;
      out.classical_bits = {b.measurement.qubit_bit, 1};
      return out;
    }
    u -= b.measurement.probability;
  }
  // Qubit 3 is maximally mixed after the Hadamard for link inputs.
  out.classical_bits = {uniform(rng) < 0.5 ? 0 : 1, 0};
  return out;
}

ConversionResult convert_to_two_qubit(const HybridState& hybrid, const BellMeasurement& cfg) {
  if (hybrid.num_qubits() != 1 || hybrid.num_modes() != 1) {
    throw std::invalid_argument("conversion needs a one-qubit, one-mode state");
  }
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<HybridKet, 2> plus{{{0u, {}, {r, 0.0}}, {1u, {}, {r, 0.0}}}};
  HybridState s = tensor(hybrid, HybridState::pure(1, 0, plus));
  s = controlled_rotation(s, 1, 0, -cfg.theta);
  const HybridState rest =
      detect(s, 0, cfg, {ModePovm::click(), ModePovm::click(), ModePovm::vacuum()});
  ConversionResult out;
  const Eigen::Matrix4cd op = trace_out_modes(rest);
  out.probability = op.trace().real();
  if (out.probability > 0.0) out.state = TwoQubitDensity::from_unnormalized(op);
  return out;
}

LinkStatistics link_attempt_statistics(const LinkParams& params, LinkScheme scheme,
                                       double homodyne_halfwidth) {
  params.validate();
  LinkStatistics out;
  const UsdBudget budget = pattern_probabilities(params);
  const DetectionPattern even_pattern{{true, true, false}};
  const DetectionPattern odd_pattern{{false, false, true}};
  switch (scheme) {
    case LinkScheme::even:
    case LinkScheme::total_usd: {
      out.success_probability = scheme == LinkScheme::even ? budget.p_even : budget.p_total_usd;
      if (!(out.success_probability > 0.0)) break;
      // Fidelity axis is the even-pattern state's phi+ weight for both schemes.
      const auto o = classify_and_condition(even_pattern, params);
      out.fidelity = o.conditional_state ? bell_fidelity(*o.conditional_state, Bell::phi_plus)
                                         : link_quantities(params).fidelity_F;
      break;
    }
    case LinkScheme::odd_ent: {
      out.success_probability = budget.p_odd_ent;
      if (!(out.success_probability > 0.0)) break;
      const auto o = classify_and_condition(odd_pattern, params, {.parity_resolving = true});
      double weight = 0.0;
      for (const auto& b : o.parity_branches) {
        out.fidelity += b.probability * b.fidelity;
        weight += b.probability;
      }
      if (weight > 0.0) out.fidelity /= weight;
      break;
    }
    case LinkScheme::homodyne: {
      const auto h = homodyne_p_condition(params, homodyne_halfwidth);
      out.success_probability = h.success_probability;
      out.fidelity = bell_fidelity(h.state, Bell::phi_plus);
      break;
    }
  }
  if (!(out.success_probability > 0.0)) {
    throw std::domain_error("scheme " + std::string(to_string(scheme)) +
                            " has zero success probability at these parameters");
  }
  out.expected_attempts = 1.0 / out.success_probability;
  return out;
}

}  // namespace qubus
