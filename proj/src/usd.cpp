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

#include "qubus/usd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qubus {

double usd_failure_bound_from_fidelity(double fidelity, double eta) {
  if (!(fidelity >= 0.5 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in [1/2, 1]");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("failure bound needs 0 < eta < 1");
  }
  return std::pow(2.0 * fidelity - 1.0, eta / (1.0 - eta));
}

double usd_optimal_failure(const LinkParams& params) {
  params.validate();
  return std::exp(-params.eta() * params.alpha * params.alpha * one_minus_cos(params.theta));
}

std::array<CoherentLabel, 3> receiver_transform(CoherentLabel input, const LinkParams& params) {
  params.validate();
  const NominalLabels n = nominal_labels(params);
  const double lam = params.lambda_bs;
  const double t3 = params.third_port_amplitude();
  const cplx b = input.value();
  return {
      CoherentLabel(lam * b + -(lam * n.plus.value())),
      CoherentLabel(lam * b + -(lam * n.minus.value())),
      CoherentLabel(t3 * b + -(t3 * n.unrotated.value())),
  };
}

HybridState apply_receiver(const HybridState& state, std::size_t mode, double lambda_bs,
                           const NominalLabels& nominal) {
  const double t3 = std::sqrt(third_port_weight(lambda_bs));
  const std::array<double, 3> split{lambda_bs, lambda_bs, t3};
  HybridState s = split_mode(state, mode, split);
  s = displace(s, mode, -(lambda_bs * nominal.plus.value()));
  s = displace(s, mode + 1, -(lambda_bs * nominal.minus.value()));
  s = displace(s, mode + 2, -(t3 * nominal.unrotated.value()));
  return s;
}

DetectionPattern DetectionPattern::from_index(int index) {
  if (index < 0 || index > 7) throw std::out_of_range("pattern index must be in [0, 8)");
  return {{(index & 1) != 0, (index & 2) != 0, (index & 4) != 0}};
}

std::string DetectionPattern::to_string() const {
  std::string s;
  for (bool c : clicks) s.push_back(c ? 'C' : 'N');
  return s;
}

std::array<DetectionPattern, 8> DetectionPattern::all() {
  std::array<DetectionPattern, 8> out;
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = from_index(i);
  return out;
}

std::string_view to_string(PatternClass c) {
  switch (c) {
    case PatternClass::identifies_unrotated: return "identifies_unrotated";
    case PatternClass::identifies_rho2_parity_unknown: return "identifies_rho2_parity_unknown";
    case PatternClass::identifies_plus_theta: return "identifies_plus_theta";
    case PatternClass::identifies_minus_theta: return "identifies_minus_theta";
    case PatternClass::partially_conclusive: return "partially_conclusive";
    case PatternClass::inconclusive_vacuum: return "inconclusive_vacuum";
    case PatternClass::impossible: return "impossible";
  }
  return "?";
}

PatternClass classify(DetectionPattern pattern) {
  const auto [c1, c2, c3] = pattern.clicks;
  if (c1 && c2 && c3) return PatternClass::impossible;
  if (c1 && c2) return PatternClass::identifies_unrotated;
  if (c3 && !c1 && !c2) return PatternClass::identifies_rho2_parity_unknown;
  if (c3 && c2) return PatternClass::identifies_plus_theta;
  if (c3 && c1) return PatternClass::identifies_minus_theta;
  if (c1 || c2) return PatternClass::partially_conclusive;
  return PatternClass::inconclusive_vacuum;
}

UsdBudget pattern_probabilities(const LinkParams& params) {
  params.validate();
  const double lam2 = params.lambda_bs * params.lambda_bs;
  const double x = params.eta() * params.alpha * params.alpha;
  const double omc = one_minus_cos(params.theta);
  const double s = std::sin(params.theta);
  UsdBudget b;
  const double even_arm = -std::expm1(-lam2 * x * 2.0 * omc);
  b.p_even = 0.5 * even_arm * even_arm;
  b.p_odd_usd = 0.5 * -std::expm1(-third_port_weight(params.lambda_bs) * x * 2.0 * omc);
  b.p_odd_ent = b.p_odd_usd * std::exp(-lam2 * x * 4.0 * s * s);
  b.p_total_usd = b.p_even + b.p_odd_usd;
  b.p_total_ent = b.p_even + b.p_odd_ent;
  return b;
}

std::array<double, 8> click_distribution(CoherentLabel input, const LinkParams& params) {
  const auto out = receiver_transform(input, params);
  std::array<double, 3> click{};
  for (std::size_t m = 0; m < 3; ++m) click[m] = -std::expm1(-out[m].mean_photons());
  std::array<double, 8> dist{};
  for (int i = 0; i < 8; ++i) {
    const auto p = DetectionPattern::from_index(i);
    double prob = 1.0;
    for (std::size_t m = 0; m < 3; ++m) prob *= p.clicks[m] ? click[m] : 1.0 - click[m];
    dist[static_cast<std::size_t>(i)] = prob;
  }
  return dist;
}

std::array<double, 8> pattern_distribution(const LinkParams& params) {
  const NominalLabels n = nominal_labels(params);
  const auto d0 = click_distribution(n.unrotated, params);
  const auto dp = click_distribution(n.plus, params);
  const auto dm = click_distribution(n.minus, params);
  std::array<double, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) out[i] = 0.5 * d0[i] + 0.25 * dp[i] + 0.25 * dm[i];
  return out;
}

Eigen::Matrix4cd conditioned_link_operator(const LinkParams& params,
                                           const std::array<ModePovm, 3>& detectors) {
  HybridState s = apply_receiver(build_link_state(params), 0, params.lambda_bs, nominal_labels(params));
  for (std::size_t m = 3; m-- > 0;) s = measure_mode(s, m, detectors[m]);
  return trace_out_modes(s);
}

double odd_phase_corrected_fidelity(const TwoQubitDensity& rho) {
  const auto& m = rho.matrix();
  return 0.5 * (m(1, 1).real() + m(2, 2).real()) + std::abs(m(1, 2));
}

namespace {

std::array<ModePovm, 3> onoff(DetectionPattern p) {
  std::array<ModePovm, 3> d;
  for (std::size_t m = 0; m < 3; ++m) d[m] = p.clicks[m] ? ModePovm::click() : ModePovm::vacuum();
  return d;
}

}  // namespace

PatternOutcome classify_and_condition(DetectionPattern pattern, const LinkParams& params,
                                      ReceiverOptions options) {
  params.validate();
  PatternOutcome out;
  out.pattern = pattern;
  out.classification = classify(pattern);
  out.probability = pattern_distribution(params)[static_cast<std::size_t>(pattern.index())];

  switch (out.classification) {
    case PatternClass::impossible:
    case PatternClass::inconclusive_vacuum:
    case PatternClass::partially_conclusive:
      return out;
    default:
      break;
  }
  const Eigen::Matrix4cd op = conditioned_link_operator(params, onoff(pattern));
  if (!(op.trace().real() > 0.0)) return out;
  out.conditional_state = TwoQubitDensity::from_unnormalized(op);

  if (options.parity_resolving &&
      out.classification == PatternClass::identifies_rho2_parity_unknown) {
    for (int parity = 0; parity < 2; ++parity) {
      const ModePovm third = parity == 0 ? ModePovm::even_nonvacuum() : ModePovm::parity_odd();
      const Eigen::Matrix4cd pop =
          conditioned_link_operator(params, {ModePovm::vacuum(), ModePovm::vacuum(), third});
      const double p = pop.trace().real();
      if (!(p > 0.0)) continue;
      auto state = TwoQubitDensity::from_unnormalized(pop);
      const double f = odd_phase_corrected_fidelity(state);
      out.parity_branches.push_back({parity, p, std::move(state), f});
    }
  }
  return out;
}

double homodyne_window_center(const LinkParams& params) {
  return std::numbers::sqrt2 * nominal_labels(params).unrotated.value().imag();
}

HomodyneResult homodyne_p_condition(const LinkParams& params, double halfwidth) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("window halfwidth must be positive");
  const HybridState s = build_link_state(params);
  const HybridState m =
      measure_mode(s, 0, ModePovm::p_window(homodyne_window_center(params), halfwidth));
  const Eigen::Matrix4cd op = trace_out_modes(m);
  const double p = op.trace().real();
  if (!(p > 0.0)) throw std::domain_error("homodyne window has zero acceptance");
  return {p, TwoQubitDensity::from_unnormalized(op)};
}

}  // namespace qubus
