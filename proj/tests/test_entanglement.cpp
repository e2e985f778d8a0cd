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

#include <array>
#include <complex>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qubus/entanglement.hpp"
#include "qubus/link.hpp"
#include "test_support.hpp"

namespace qubus {
namespace {

TwoQubitDensity bell(Bell b) { return TwoQubitDensity::from_pure(bell_vector(b)); }

TwoQubitDensity bell_mix(double p, Bell a, Bell b) {
  const Eigen::Vector4cd va = bell_vector(a), vb = bell_vector(b);
  return TwoQubitDensity(p * va * va.adjoint() + (1.0 - p) * vb * vb.adjoint());
}

// Wootters from scratch: eigenvalues of rho (Y x Y) rho* (Y x Y).
// Direct Wootters formula in extended precision so that the square roots of
// near-zero eigenvalues stay below the comparison tolerance.
double reference_concurrence(const Eigen::Matrix4cd& rho) {
  using M = Eigen::Matrix<std::complex<long double>, 4, 4>;
  M yy = M::Zero();
  yy(0, 3) = -1.0L;
  yy(1, 2) = 1.0L;
  yy(2, 1) = 1.0L;
  yy(3, 0) = -1.0L;
  const M r = rho.cast<std::complex<long double>>();
  const M prod = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<M> es(prod);
  std::array<long double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0L, es.eigenvalues()(i).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return static_cast<double>(std::max(0.0L, l[0] - l[1] - l[2] - l[3]));
}

TEST(Concurrence, BellStatesAreMaximal) {
  for (Bell b : {Bell::phi_plus, Bell::phi_minus, Bell::psi_plus, Bell::psi_minus}) {
    EXPECT_NEAR(concurrence(bell(b)), 1.0, 1e-10) << to_string(b);
  }
}

TEST(Concurrence, ProductStatesVanish) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(0) = 1.0;
  EXPECT_NEAR(concurrence(TwoQubitDensity::from_pure(v)), 0.0, 1e-10);
  EXPECT_NEAR(concurrence(TwoQubitDensity::maximally_mixed()), 0.0, 1e-10);
  // |+>|->
  Eigen::Vector4cd w(0.5, -0.5, 0.5, -0.5);
  EXPECT_NEAR(concurrence(TwoQubitDensity::from_pure(w)), 0.0, 1e-10);
}

TEST(Concurrence, RankTwoBellMixture) {
  EXPECT_NEAR(concurrence(bell_mix(0.7, Bell::phi_plus, Bell::phi_minus)), 0.4, 1e-10);
  for (double p : {0.0, 0.1, 0.5, 0.85, 1.0}) {
    EXPECT_NEAR(concurrence(bell_mix(p, Bell::phi_plus, Bell::phi_minus)), std::abs(2 * p - 1), 1e-10);
  }
}

TEST(Concurrence, MatchesIndependentWootters) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Matrix4cd rho = testing::random_density(rng, 1 + k % 4);
    EXPECT_NEAR(concurrence(TwoQubitDensity(rho)), reference_concurrence(rho), 1e-9);
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix4cd rho = testing::random_density(rng, 2);
    const Eigen::MatrixXcd ua = testing::random_unitary(2, rng), uc = testing::random_unitary(2, rng);
    Eigen::Matrix4cd u;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = ua(i, j) * uc;
    const Eigen::Matrix4cd rotated = u * rho * u.adjoint();
    EXPECT_NEAR(concurrence(TwoQubitDensity(rotated)), concurrence(TwoQubitDensity(rho)), 1e-9);
  }
}

TEST(Concurrence, Convexity) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix4cd a = testing::random_density(rng, 1);
    const Eigen::Matrix4cd b = testing::random_density(rng, 2);
    const double p = 0.3;
    const double mixed = concurrence(TwoQubitDensity(p * a + (1 - p) * b));
    EXPECT_LE(mixed, p * concurrence(TwoQubitDensity(a)) + (1 - p) * concurrence(TwoQubitDensity(b)) + 1e-10);
  }
}

TEST(EntanglementOfFormation, Endpoints) {
  EXPECT_NEAR(eof_from_concurrence(1.0), 1.0, 1e-14);
  EXPECT_NEAR(eof_from_concurrence(0.0), 0.0, 1e-14);
}

TEST(EntanglementOfFormation, MonotoneInConcurrence) {
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double e = eof_from_concurrence(i / 200.0);
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(BellFidelity, Fixtures) {
  EXPECT_NEAR(bell_fidelity(TwoQubitDensity::maximally_mixed(), Bell::phi_plus), 0.25, 1e-15);
  EXPECT_NEAR(bell_fidelity(bell(Bell::phi_minus), Bell::phi_plus), 0.0, 1e-15);
  EXPECT_NEAR(bell_fidelity(bell(Bell::phi_plus), Bell::phi_plus), 1.0, 1e-15);
}

TEST(LinkQuantities, Limits) {
  const auto lossless = link_quantities(LinkParams::with_eta(50.0, 0.01, 1.0));
  EXPECT_DOUBLE_EQ(lossless.mu_E, 1.0);
  EXPECT_DOUBLE_EQ(lossless.fidelity_F, 1.0);
  const auto dark = link_quantities(LinkParams::with_eta(0.0, 0.01, 0.3));
  EXPECT_DOUBLE_EQ(dark.mu_B, 1.0);
  LinkParams p;
  p.distance_km = 17.0;
  EXPECT_NEAR(p.eta(), 0.494, 5e-4);
}

TEST(LinkQuantities, ClosedForms) {
  const auto p = LinkParams::with_eta(40.0, 0.02, 0.3);
  const auto q = link_quantities(p);
  const double omc = 1.0 - std::cos(0.02);
  EXPECT_NEAR(q.mu_B, std::sqrt(1.0 + std::exp(-0.3 * 1600.0 * omc)) / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(q.mu_E, std::sqrt(1.0 + std::exp(-0.7 * 1600.0 * omc)) / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(q.nu_E * q.nu_E + q.mu_E * q.mu_E, 1.0, 1e-14);
  EXPECT_NEAR(q.xi, 1600.0 * std::sin(0.02), 1e-12);
}

TEST(AlphaForFidelity, InvertsMuE) {
  for (double f : {0.55, 0.7, 0.93}) {
    for (double eta : {0.01, 0.3, 0.8}) {
      const double a = alpha_for_fidelity(f, eta, 0.01);
      EXPECT_NEAR(link_quantities(LinkParams::with_eta(a, 0.01, eta)).fidelity_F, f, 1e-12);
    }
  }
}

// Tr(rho^2) summed dyad by dyad.
double purity(const HybridState& s) {
  cplx acc = 0.0;
  for (const auto& a : s.branches()) {
    for (const auto& b : s.branches()) {
      if (a.bra != b.ket || b.bra != a.ket) continue;
      cplx t = a.coeff * b.coeff;
      for (std::size_t m = 0; m < a.ket_modes.size(); ++m) {
        t *= coherent_overlap(a.bra_modes[m], b.ket_modes[m]) * coherent_overlap(b.bra_modes[m], a.ket_modes[m]);
      }
      acc += t;
    }
  }
  return acc.real();
}

// Keeps only the |00>, |11> rows and columns.
Eigen::Matrix4cd even_sector(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int i : {0, 3})
    for (int j : {0, 3}) out(i, j) = rho(i, j);
  return out;
}

TEST(LinkState, EvenSectorIsRankTwoBellMixture) {
  for (double eta : {0.2, 0.5, 1.0}) {
    const auto p = LinkParams::with_eta(60.0, 0.01, eta);
    const Eigen::Matrix4cd full = trace_out_modes(build_link_state(p));
    EXPECT_NEAR(full.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(testing::odd_weight(full), 0.5, 1e-12);
    const Eigen::Matrix4cd rho = testing::normalized(even_sector(full));
    const double f = link_quantities(p).fidelity_F;
    EXPECT_NEAR(testing::bell_weight(rho, Bell::phi_plus), f, 1e-12);
    EXPECT_NEAR(testing::bell_weight(rho, Bell::phi_minus), 1.0 - f, 1e-12);
    EXPECT_NEAR(testing::odd_weight(rho), 0.0, 1e-14);
  }
}

TEST(LinkState, LosslessStateIsPure) {
  EXPECT_NEAR(purity(build_link_state(LinkParams::with_eta(60.0, 0.01, 1.0))), 1.0, 1e-10);
  EXPECT_LT(purity(build_link_state(LinkParams::with_eta(60.0, 0.01, 0.5))), 0.99);
}

TEST(LinkState, ZeroAmplitudeIsSeparable) {
  const auto rho = TwoQubitDensity::from_unnormalized(
      trace_out_modes(build_link_state(LinkParams::with_eta(0.0, 0.01, 0.5))));
  EXPECT_NEAR(concurrence(rho), 0.0, 1e-12);
}

TEST(QubitQubusEof, UnimodalWithPeakNearUnitAlphaTheta) {
  for (double d : {1.0, 5.0, 10.0, 20.0}) {
    std::vector<double> e;
    std::vector<double> alphas;
    for (int i = 0; i < 200; ++i) alphas.push_back(500.0 * i / 199.0);
    for (double a : alphas) {
      LinkParams p;
      p.alpha = a;
      p.distance_km = d;
      e.push_back(qubit_qubus_eof(p));
    }
    const auto peak = std::max_element(e.begin(), e.end()) - e.begin();
    for (long i = 1; i <= peak; ++i) EXPECT_GE(e[i], e[i - 1]) << d << " km, i=" << i;
    for (std::size_t i = peak + 1; i < e.size(); ++i) EXPECT_LE(e[i], e[i - 1]) << d << " km, i=" << i;
    const double at = alphas[static_cast<std::size_t>(peak)] * 0.01;
    EXPECT_GE(at, 0.3);
    EXPECT_LE(at, 3.0);
  }
}

TEST(QubitQubusEof, LosslessApproachesOne) {
  double prev = -1.0;
  for (double a = 0.0; a <= 1000.0; a += 25.0) {
    const double e = qubit_qubus_eof(LinkParams::with_eta(a, 0.01, 1.0));
    EXPECT_GE(e, prev - 1e-14);
    prev = e;
  }
  EXPECT_NEAR(prev, 1.0, 1e-6);
}

}  // namespace
}  // namespace qubus
