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
#include <numeric>

#include <gtest/gtest.h>

#include "qubus/entanglement.hpp"
#include "qubus/link.hpp"
#include "qubus/usd.hpp"
#include "test_support.hpp"

namespace qubus {
namespace {

constexpr int kCCN = 3;
constexpr int kNNC = 4;
constexpr int kCCC = 7;

// Closed forms written out here, separately from the library. 1 - cos(theta)
// is taken as 2 sin^2(theta/2); the direct difference loses ~1e-10 relative
// at theta = 1e-3.
double versine(double theta) {
  const double h = std::sin(0.5 * theta);
  return 2.0 * h * h;
}
double p_even(double x, double theta, double lam) {
  const double q = -std::expm1(-2.0 * lam * lam * x * versine(theta));
  return 0.5 * q * q;
}
double p_odd_usd(double x, double theta, double lam) {
  return -0.5 * std::expm1(-2.0 * (1.0 - 2.0 * lam * lam) * x * versine(theta));
}
double p_odd_ent(double x, double theta, double lam) {
  const double s = std::sin(theta);
  return p_odd_usd(x, theta, lam) * std::exp(-4.0 * lam * lam * x * s * s);
}

TEST(UsdBound, LinearAtHalfTransmission) {
  for (double f : {0.55, 0.75, 0.95, 1.0}) {
    EXPECT_NEAR(usd_failure_bound_from_fidelity(f, 0.5), 2 * f - 1, 1e-12);
  }
}

TEST(UsdBound, Endpoints) {
  EXPECT_EQ(usd_failure_bound_from_fidelity(0.5, 0.3), 0.0);
  EXPECT_EQ(usd_failure_bound_from_fidelity(1.0, 0.3), 1.0);
  EXPECT_THROW(usd_failure_bound_from_fidelity(0.8, 1.0), std::invalid_argument);
  EXPECT_THROW(usd_failure_bound_from_fidelity(0.4, 0.5), std::invalid_argument);
}

TEST(UsdBound, SeventeenKilometres) {
  const double eta = transmission_for_distance(17.0);
  const double bound = usd_failure_bound_from_fidelity(0.75, eta);
  EXPECT_NEAR(bound, std::pow(0.5, eta / (1.0 - eta)), 1e-15);
  EXPECT_NEAR(bound, 0.507859459612925, 1e-12);
  // Same number through the amplitude that gives F = 0.75.
  const double a = alpha_for_fidelity(0.75, eta, 0.01);
  LinkParams p;
  p.alpha = a;
  p.distance_km = 17.0;
  EXPECT_NEAR(usd_optimal_failure(p), bound, 1e-12);
}

TEST(UsdBound, ChainConsistency) {
  for (double d : {5.0, 30.0, 80.0}) {
    for (double a : {10.0, 100.0, 300.0}) {
      LinkParams p;
      p.alpha = a;
      p.distance_km = d;
      const double f = link_quantities(p).fidelity_F;
      EXPECT_NEAR(usd_failure_bound_from_fidelity(f, p.eta()), usd_optimal_failure(p), 1e-12);
    }
  }
}

TEST(UsdOptimalFailure, DegenerateInputs) {
  EXPECT_EQ(usd_optimal_failure(LinkParams::with_eta(0.0, 0.01, 0.5)), 1.0);
  EXPECT_EQ(usd_optimal_failure(LinkParams::with_eta(10.0, 0.0, 0.5)), 1.0);
}

TEST(ReceiverTransform, NominalOutputs) {
  const auto p = LinkParams::with_eta(3.0, 0.4, 0.6, 0.5);
  const auto n = nominal_labels(p);
  const cplx b = n.unrotated.value();
  const auto o0 = receiver_transform(n.unrotated, p);
  EXPECT_NEAR(std::abs(o0[0].value() - 0.5 * b * (1.0 - std::polar(1.0, 0.4))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(o0[1].value() - 0.5 * b * (1.0 - std::polar(1.0, -0.4))), 0.0, 1e-14);
  EXPECT_EQ(o0[2].value(), cplx(0.0));
  EXPECT_EQ(receiver_transform(n.plus, p)[0].value(), cplx(0.0));
  EXPECT_EQ(receiver_transform(n.minus, p)[1].value(), cplx(0.0));
}

TEST(ReceiverTransform, ZeroAngleNullsEverything) {
  const auto p = LinkParams::with_eta(3.0, 0.0, 0.6, 0.5);
  const auto n = nominal_labels(p);
  for (auto in : {n.unrotated, n.plus, n.minus}) {
    for (auto out : receiver_transform(in, p)) EXPECT_EQ(out.value(), cplx(0.0));
  }
}

TEST(Patterns, ClassificationIsTotal) {
  EXPECT_EQ(classify(DetectionPattern::from_index(kCCN)), PatternClass::identifies_unrotated);
  EXPECT_EQ(classify(DetectionPattern::from_index(0)), PatternClass::inconclusive_vacuum);
  EXPECT_EQ(classify(DetectionPattern::from_index(kCCC)), PatternClass::impossible);
  EXPECT_EQ(classify(DetectionPattern::from_index(kNNC)), PatternClass::identifies_rho2_parity_unknown);
  for (const auto& pat : DetectionPattern::all()) {
    EXPECT_EQ(DetectionPattern::from_index(pat.index()), pat);
    EXPECT_FALSE(to_string(classify(pat)).empty());
  }
  EXPECT_EQ(DetectionPattern::from_index(kCCN).to_string(), "CCN");
}

TEST(Patterns, CompletenessAndImpossibilityOnGrid) {
  for (const auto& p : testing::receiver_grid()) {
    const auto d = pattern_distribution(p);
    EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-12);
    EXPECT_EQ(d[kCCC], 0.0);
    for (double x : d) EXPECT_GE(x, 0.0);
  }
}

TEST(Budget, MatchesClosedForms) {
  for (const auto& p : testing::receiver_grid()) {
    const double x = p.eta() * p.alpha * p.alpha;
    const UsdBudget b = pattern_probabilities(p);
    const double tol = 1e-13;
    EXPECT_NEAR(b.p_even, p_even(x, p.theta, p.lambda_bs), tol);
    EXPECT_NEAR(b.p_odd_usd, p_odd_usd(x, p.theta, p.lambda_bs), tol);
    EXPECT_NEAR(b.p_odd_ent, p_odd_ent(x, p.theta, p.lambda_bs), tol);
    EXPECT_EQ(b.p_total_usd, b.p_even + b.p_odd_usd);
    EXPECT_EQ(b.p_total_ent, b.p_even + b.p_odd_ent);
    EXPECT_LE(b.p_odd_ent, b.p_odd_usd);
    EXPECT_LE(b.p_even, 0.5);
    const auto d = pattern_distribution(p);
    EXPECT_NEAR(d[kCCN], b.p_even, tol);
    EXPECT_NEAR(d[kNNC], b.p_odd_ent, tol);
    EXPECT_NEAR(d[4] + d[5] + d[6], b.p_odd_usd, tol);
  }
}

TEST(Budget, ReferencePoint) {
  const auto b = pattern_probabilities(LinkParams::with_eta(100.0, 0.01, 0.5, 0.7));
  const double q = -std::expm1(-2 * 0.49 * 0.5 * 1e4 * versine(0.01));
  EXPECT_NEAR(b.p_even, 0.5 * q * q, 1e-15);
  EXPECT_NEAR(b.p_even, 0.0236, 1e-4);
}

TEST(Budget, DegenerateSettings) {
  const auto zero = pattern_probabilities(LinkParams::with_eta(50.0, 0.0, 0.5, 0.4));
  EXPECT_EQ(zero.p_even, 0.0);
  EXPECT_EQ(zero.p_odd_usd, 0.0);
  EXPECT_EQ(zero.p_odd_ent, 0.0);
  const auto full = pattern_probabilities(LinkParams::with_eta(50.0, 0.1, 0.5, 1.0 / std::sqrt(2.0)));
  EXPECT_NEAR(full.p_odd_usd, 0.0, 1e-15);
  const auto tiny = pattern_probabilities(LinkParams::with_eta(50.0, 0.1, 0.5, 1e-6));
  EXPECT_LT(tiny.p_even, 1e-20);
  EXPECT_GT(tiny.p_odd_usd, 0.4);
  const auto saturated = pattern_probabilities(LinkParams::with_eta(1e4, 0.01, 1.0, 0.7));
  EXPECT_NEAR(saturated.p_even, 0.5, 1e-12);
}

TEST(Budget, BoundDominance) {
  for (const auto& p : testing::receiver_grid()) {
    EXPECT_GE(1.0 - pattern_probabilities(p).p_total_usd, usd_optimal_failure(p) - 1e-12);
  }
}

TEST(Conditioning, EvenPatternIsBitFlipFree) {
  for (const auto& p : testing::receiver_grid()) {
    const auto out = classify_and_condition(DetectionPattern::from_index(kCCN), p);
    EXPECT_EQ(out.classification, PatternClass::identifies_unrotated);
    if (out.probability == 0.0) continue;
    ASSERT_TRUE(out.conditional_state.has_value());
    EXPECT_LE(testing::odd_weight(out.conditional_state->matrix()), 1e-14);
  }
}

TEST(Conditioning, EvenPatternFidelityIsMuE2) {
  for (double eta : {0.1, 0.5, 0.9}) {
    const auto p = LinkParams::with_eta(150.0, 0.01, eta, 0.7);
    const auto out = classify_and_condition(DetectionPattern::from_index(kCCN), p);
    ASSERT_TRUE(out.conditional_state.has_value());
    EXPECT_NEAR(bell_fidelity(*out.conditional_state, Bell::phi_plus), link_quantities(p).fidelity_F, 1e-12);
    EXPECT_NEAR(out.probability, pattern_probabilities(p).p_even, 1e-14);
  }
}

TEST(Conditioning, InconclusiveAndImpossiblePatterns) {
  const auto p = LinkParams::with_eta(150.0, 0.01, 0.5, 0.4);
  const auto vac = classify_and_condition(DetectionPattern::from_index(0), p);
  EXPECT_FALSE(vac.conditional_state.has_value());
  EXPECT_GT(vac.probability, 0.0);
  const auto ccc = classify_and_condition(DetectionPattern::from_index(kCCC), p);
  EXPECT_EQ(ccc.probability, 0.0);
  EXPECT_FALSE(ccc.conditional_state.has_value());
}

TEST(Conditioning, OddPatternParityBranches) {
  const auto p = LinkParams::with_eta(150.0, 0.01, 0.5, 0.4);
  ReceiverOptions opt;
  opt.parity_resolving = true;
  const auto out = classify_and_condition(DetectionPattern::from_index(kNNC), p, opt);
  ASSERT_EQ(out.parity_branches.size(), 2u);
  double total = 0.0;
  for (const auto& b : out.parity_branches) {
    total += b.probability;
    // The odd pattern heralds the odd subspace.
    EXPECT_NEAR(testing::bell_weight(b.state.matrix(), Bell::phi_plus) +
                    testing::bell_weight(b.state.matrix(), Bell::phi_minus),
                0.0, 1e-12);
    EXPECT_NEAR(b.fidelity, odd_phase_corrected_fidelity(b.state), 1e-15);
  }
  EXPECT_NEAR(total, out.probability, 1e-14);
  EXPECT_NEAR(out.probability, pattern_probabilities(p).p_odd_ent, 1e-14);
}

TEST(Homodyne, WideWindowRecoversUnconditionedState) {
  const auto p = LinkParams::with_eta(60.0, 0.01, 0.5);
  const auto h = homodyne_p_condition(p, 1e3);
  EXPECT_NEAR(h.success_probability, 1.0, 1e-10);
  const Eigen::Matrix4cd full = trace_out_modes(build_link_state(p));
  EXPECT_LT(testing::trace_distance(h.state.matrix(), full), 1e-10);
}

TEST(Homodyne, SeparatedPeaksSuppressBitFlips) {
  const auto p = LinkParams::with_eta(1000.0, 0.01, 0.5);
  ASSERT_GE(std::sqrt(p.eta()) * p.alpha * p.theta, 5.0);
  const auto h = homodyne_p_condition(p, 1.0);
  EXPECT_LT(testing::odd_weight(h.state.matrix()), 1e-4);
}

TEST(Homodyne, BitFlipsRemainAtMatchedFidelity) {
  for (double f : {0.6, 0.7, 0.9}) {
    LinkParams p;
    p.distance_km = 20.0;
    p.lambda_bs = 0.7;
    p.alpha = alpha_for_fidelity(f, p.eta(), p.theta);
    const auto h = homodyne_p_condition(p, 1.0);
    const auto even = classify_and_condition(DetectionPattern::from_index(kCCN), p);
    EXPECT_GT(testing::odd_weight(h.state.matrix()), 0.0);
    EXPECT_LE(testing::odd_weight(even.conditional_state->matrix()), 1e-14);
  }
}

}  // namespace
}  // namespace qubus
