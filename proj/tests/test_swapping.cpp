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

#include <gtest/gtest.h>

#include "qubus/entanglement.hpp"
#include "qubus/swapping.hpp"
#include "qubus/usd.hpp"
#include "test_support.hpp"

namespace qubus {
namespace {

BellMeasurement usd_for(const LinkParams& p) { return BellMeasurement::for_link(p, Discriminator::usd_unrotated); }

double even_herald(double amp, double theta, double lam) {
  const double q = 1.0 - std::exp(-2.0 * lam * lam * amp * amp * (1.0 - std::cos(theta)));
  return q * q;
}

TEST(HybridBell, StatesAreNormalized) {
  for (auto k : {HybridBell::pair1_plus, HybridBell::pair1_minus, HybridBell::pair2_plus,
                 HybridBell::pair2_minus}) {
    EXPECT_NEAR(hybrid_bell_state(k, 2.0, 0.3).trace().real(), 1.0, 1e-14) << to_string(k);
  }
}

TEST(HybridBellMeasure, IdentifiesPairOnePlus) {
  const auto p = LinkParams::with_eta(4.0, 0.5, 1.0, 0.7);
  const HybridState in = hybrid_bell_state(HybridBell::pair1_plus, 4.0, 0.5);
  const BellAnalysis a = analyze_hybrid_bell(in, 0, 0, usd_for(p));
  ASSERT_FALSE(a.branches.empty());
  for (const auto& b : a.branches) {
    if (b.probability > 0.0) EXPECT_EQ(b.identified, HybridBell::pair1_plus);
  }
  EXPECT_NEAR(a.success_probability, even_herald(4.0, 0.5, 0.7), 1e-12);

  std::mt19937_64 rng(1);
  int hits = 0;
  for (int i = 0; i < 200; ++i) {
    const SwapOutcome o = hybrid_bell_measure(in, 0, 0, usd_for(p), rng);
    if (o.success) {
      ++hits;
      EXPECT_EQ(*o.identified_pair, HybridBell::pair1_plus);
    }
  }
  EXPECT_GT(hits, 0);
}

TEST(HybridBellMeasure, ZeroAngleNeverSucceeds) {
  const auto p = LinkParams::with_eta(4.0, 0.0, 1.0, 0.7);
  const HybridState in = hybrid_bell_state(HybridBell::pair1_plus, 4.0, 0.0);
  EXPECT_EQ(analyze_hybrid_bell(in, 0, 0, usd_for(p)).success_probability, 0.0);
}

TEST(HybridBellMeasure, InvalidIndices) {
  const auto p = LinkParams::with_eta(4.0, 0.5, 1.0, 0.7);
  const HybridState in = hybrid_bell_state(HybridBell::pair1_plus, 4.0, 0.5);
  EXPECT_THROW(analyze_hybrid_bell(in, 1, 0, usd_for(p)), std::out_of_range);
  EXPECT_THROW(analyze_hybrid_bell(in, 0, 3, usd_for(p)), std::out_of_range);
}

TEST(Swap, LosslessBranchesAreBellStates) {
  for (double alpha : {3.0, 300.0}) {
    const double theta = alpha < 10 ? 0.8 : 0.01;
    const auto p = LinkParams::with_eta(alpha, theta, 1.0, 0.7);
    const HybridState link = qubit_qubus_state(p);
    const SwapAnalysis a = analyze_swap(link, link, usd_for(p), usd_for(p).unrotated);
    ASSERT_FALSE(a.branches.empty());
    EXPECT_GT(a.success_probability, 0.0);
    for (const auto& b : a.branches) EXPECT_NEAR(b.bell_fidelity, 1.0, 1e-10);
  }
}

TEST(Swap, SeparableInputGivesSeparableOutput) {
  const auto p = LinkParams::with_eta(3.0, 0.8, 1.0, 0.7);
  auto dark = p;
  dark.alpha = 0.0;
  const SwapAnalysis a = analyze_swap(qubit_qubus_state(dark), qubit_qubus_state(p), usd_for(p),
                                      usd_for(p).unrotated);
  ASSERT_FALSE(a.branches.empty());
  for (const auto& b : a.branches) {
    if (b.measurement.probability > 0.0) EXPECT_NEAR(hybrid_concurrence(b.heralded), 0.0, 1e-12);
  }
}

TEST(Swap, LossNeverImprovesFidelityOrEntanglement) {
  for (double eta : {0.2, 0.5, 0.8}) {
    for (double alpha : {1.0, 2.0, 4.0}) {
      const auto p = LinkParams::with_eta(alpha, 0.6, eta, 0.7);
      const HybridState link = qubit_qubus_state(p);
      const double f_in = link_quantities(p).fidelity_F;
      const double c_in = hybrid_concurrence(link);
      const SwapAnalysis a = analyze_swap(link, link, usd_for(p), usd_for(p).unrotated);
      for (const auto& b : a.branches) {
        EXPECT_LE(b.bell_fidelity, f_in + 1e-12) << eta << " " << alpha;
        EXPECT_LE(hybrid_concurrence(b.heralded), c_in + 1e-10) << eta << " " << alpha;
      }
    }
  }
}

TEST(Swap, SuccessCeilingUsd) {
  for (double eta : {0.05, 0.5, 1.0}) {
    for (double alpha : {0.5, 5.0, 50.0, 500.0}) {
      for (double theta : {0.01, 0.3, 1.5}) {
        for (double lam : {0.01, 0.4, 0.7}) {
          const auto p = LinkParams::with_eta(alpha, theta, eta, lam);
          const HybridState link = qubit_qubus_state(p);
          const auto a = analyze_swap(link, link, usd_for(p), usd_for(p).unrotated);
          EXPECT_LE(a.success_probability, 0.5 + 1e-12);
        }
      }
    }
  }
}

TEST(Swap, SuccessCeilingHomodyneSeparatedPeaks) {
  for (double alpha : {800.0, 2000.0}) {
    const auto p = LinkParams::with_eta(alpha, 0.01, 0.5, 0.0);
    const double sigma = std::sqrt(0.5);
    const double offset = std::sqrt(2.0) * std::sqrt(p.eta()) * alpha * std::sin(p.theta);
    const double halfwidth = 1.0;
    ASSERT_GE(offset - halfwidth, 6.0 * sigma);
    const HybridState link = qubit_qubus_state(p);
    const auto cfg = BellMeasurement::for_link(p, Discriminator::p_homodyne, halfwidth);
    EXPECT_LE(analyze_swap(link, link, cfg, cfg.unrotated).success_probability, 0.5 + 1e-12);
  }
}

TEST(Swap, SeededRunsAreIdentical) {
  const auto p = LinkParams::with_eta(3.0, 0.8, 0.7, 0.7);
  const HybridState link = qubit_qubus_state(p);
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 50; ++i) {
    const SwapOutcome a = entanglement_swap(link, link, usd_for(p), usd_for(p).unrotated, r1);
    const SwapOutcome b = entanglement_swap(link, link, usd_for(p), usd_for(p).unrotated, r2);
    EXPECT_EQ(a.success, b.success);
    EXPECT_EQ(a.classical_bits, b.classical_bits);
    EXPECT_EQ(a.identified_pair, b.identified_pair);
    EXPECT_EQ(a.success_probability, b.success_probability);
  }
}

TEST(Conversion, LosslessPairBecomesPhiPlus) {
  const double alpha = 3.0, theta = 0.7, lam = 0.7;
  const auto p = LinkParams::with_eta(alpha, theta, 1.0, lam);
  const ConversionResult r = convert_to_two_qubit(hybrid_bell_state(HybridBell::pair1_plus, alpha, theta),
                                                  usd_for(p));
  ASSERT_TRUE(r.state.has_value());
  EXPECT_NEAR(bell_fidelity(*r.state, Bell::phi_plus), 1.0, 1e-10);
  EXPECT_NEAR(r.probability, 0.5 * even_herald(alpha, theta, lam), 1e-12);
}

TEST(LinkStatistics, RateBands) {
  for (auto [d, lo, hi] : {std::tuple{50.0, 0.005, 0.015}, std::tuple{100.0, 5e-5, 2e-4}}) {
    LinkParams p;
    p.distance_km = d;
    p.lambda_bs = 0.7;
    p.alpha = alpha_for_fidelity(0.7, p.eta(), p.theta);
    const auto s = link_attempt_statistics(p, LinkScheme::even);
    EXPECT_GE(s.success_probability, lo);
    EXPECT_LE(s.success_probability, hi);
    EXPECT_DOUBLE_EQ(s.expected_attempts, 1.0 / s.success_probability);
    EXPECT_NEAR(s.fidelity, 0.7, 1e-12);
  }
}

TEST(LinkStatistics, SaturatesAtOneHalf) {
  const auto s = link_attempt_statistics(LinkParams::with_eta(1e4, 0.01, 1.0, 0.7), LinkScheme::even);
  EXPECT_NEAR(s.success_probability, 0.5, 1e-12);
}

TEST(LinkStatistics, ZeroSuccessIsAnError) {
  EXPECT_THROW(link_attempt_statistics(LinkParams::with_eta(100.0, 0.0, 0.5, 0.7), LinkScheme::even),
               std::domain_error);
}

TEST(LinkStatistics, SchemesAgreeWithBudget) {
  const auto p = LinkParams::with_eta(150.0, 0.01, 0.4, 0.4);
  const auto b = pattern_probabilities(p);
  EXPECT_NEAR(link_attempt_statistics(p, LinkScheme::odd_ent).success_probability, b.p_odd_ent, 1e-14);
  EXPECT_NEAR(link_attempt_statistics(p, LinkScheme::total_usd).success_probability, b.p_total_usd, 1e-14);
  const auto h = link_attempt_statistics(p, LinkScheme::homodyne, 1.0);
  EXPECT_GT(h.success_probability, 0.0);
  EXPECT_LE(h.fidelity, 1.0);
}

}  // namespace
}  // namespace qubus
