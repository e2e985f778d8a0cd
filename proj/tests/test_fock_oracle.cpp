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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qubus/fock_oracle.hpp"
#include "qubus/swapping.hpp"
#include "qubus/usd.hpp"
#include "test_support.hpp"

namespace qubus {
namespace {

using oracle::FockMixture;
using oracle::FockVector;
using oracle::ModeElement;

FockVector random_vector(std::vector<std::size_t> dims, std::size_t n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FockVector v;
  v.n_qubits = n_qubits;
  v.dims = std::move(dims);
  const auto size = std::accumulate(v.dims.begin(), v.dims.end(), std::size_t{1}, std::multiplies<>());
  v.amp.resize(static_cast<Eigen::Index>(size));
  for (auto& a : v.amp) a = {g(rng), g(rng)};
  v.amp.normalize();
  return v;
}

// 1-qubit, 1-mode branch state written out in the number basis.
Eigen::MatrixXcd to_number_basis(const HybridState& s, std::size_t dim) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  for (const auto& b : s.branches()) {
    const auto ket = oracle::prepare_coherent(b.ket_modes[0], dim - 1);
    const auto bra = oracle::prepare_coherent(b.bra_modes[0], dim - 1);
    out.block(b.ket * dim, b.bra * dim, dim, dim) += b.coeff * ket.amp * bra.amp.adjoint();
  }
  return out;
}

TEST(Prepare, VacuumAndNorm) {
  const FockVector v = oracle::prepare_coherent(CoherentLabel(0.0), 30);
  EXPECT_EQ(v.amp(0), cplx(1.0));
  EXPECT_EQ(v.amp.tail(30).norm(), 0.0);
  for (double b : {0.5, 2.0, 3.0}) {
    const auto c = oracle::prepare_coherent(CoherentLabel(cplx(b, -0.3)), oracle::truncation_for(b + 0.3));
    EXPECT_NEAR(c.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Prepare, RejectsShortTruncation) {
  EXPECT_THROW(oracle::prepare_coherent(CoherentLabel(3.0), 10), oracle::TruncationError);
  EXPECT_EQ(oracle::truncation_for(0.0), 30u);
}

TEST(Prepare, OverlapsMatchClosedForm) {
  const std::vector<cplx> betas = {0.0, {1.0, 0.5}, {-2.0, 1.0}, {0.3, -2.9}, std::polar(3.0, 1.2)};
  for (cplx a : betas) {
    for (cplx b : betas) {
      const std::size_t N = oracle::truncation_for(3.0);
      const auto va = oracle::prepare_coherent(CoherentLabel(a), N);
      const auto vb = oracle::prepare_coherent(CoherentLabel(b), N);
      const cplx series = va.amp.dot(vb.amp);  // conjugates the first argument
      EXPECT_NEAR(std::abs(series - coherent_overlap(CoherentLabel(a), CoherentLabel(b))), 0.0, 1e-10);
    }
  }
}

TEST(Prepare, MeanPhotonNumber) {
  for (double b : {0.7, 1.9, 3.0}) {
    const auto v = oracle::prepare_coherent(CoherentLabel(std::polar(b, 0.4)), oracle::truncation_for(b));
    double n = 0.0;
    for (Eigen::Index k = 0; k < v.amp.size(); ++k) n += double(k) * std::norm(v.amp(k));
    EXPECT_NEAR(n, b * b, 1e-9);
  }
}

TEST(BeamSplitter, FiftyFiftySplitsCoherentState) {
  const cplx beta(1.8, 0.9);
  const std::size_t N = oracle::truncation_for(std::abs(beta));
  FockVector v = oracle::prepare_coherent(CoherentLabel(beta), N);
  oracle::append_vacuum_mode(v, N);
  const double r = 1.0 / std::numbers::sqrt2;
  oracle::apply_beamsplitter(v, 0, 1, r, r);
  const FockVector half = oracle::prepare_coherent(CoherentLabel(beta * r), N);
  const FockVector expected = oracle::tensor(half, half);
  EXPECT_GE(std::norm(expected.amp.dot(v.amp)), 1.0 - 1e-9);
}

TEST(Displacement, NullsCoherentState) {
  const cplx beta(-1.2, 2.1);
  const std::size_t N = oracle::truncation_for(std::abs(beta));
  FockVector v = oracle::prepare_coherent(CoherentLabel(beta), N);
  oracle::apply_displacement(v, 0, -beta);
  EXPECT_NEAR(std::norm(v.amp(0)), 1.0, 1e-9);
}

TEST(Displacement, ProducesShiftedCoherentState) {
  const cplx beta(0.4, 0.9), d(-0.2, 0.5);
  const std::size_t N = oracle::truncation_for(2.0);
  FockVector v = oracle::prepare_coherent(CoherentLabel(beta), N);
  oracle::apply_displacement(v, 0, d);
  const auto target = oracle::prepare_coherent(CoherentLabel(beta + d), N);
  const cplx phase = std::exp(cplx(0, std::imag(d * std::conj(beta))));
  EXPECT_NEAR(std::abs(target.amp.dot(v.amp) - phase), 0.0, 1e-10);
}

TEST(Displacement, LeakageIsReported) {
  FockVector v = oracle::prepare_coherent(CoherentLabel(1.0), oracle::truncation_for(1.0));
  EXPECT_THROW(oracle::apply_displacement(v, 0, 8.0), oracle::TruncationError);
}

TEST(Receiver, PreservesNormOfRandomVector) {
  std::mt19937_64 rng(21);
  FockVector v = random_vector({2, 9}, 1, rng);
  // Random content reaches the top level, so leave room for everything it can spread into.
  oracle::resize_mode(v, 0, 60);
  oracle::apply_receiver(v, 0, 0.5, {0.3, 0.0}, std::polar(0.3, 0.2), std::polar(0.3, -0.2), 60);
  EXPECT_NEAR(v.norm_squared(), 1.0, 1e-9);
  EXPECT_EQ(v.n_modes(), 3u);
}

TEST(Kernels, SerialMatchesParallel) {
  std::mt19937_64 rng(4);
  const FockVector base = random_vector({2, 2, 7, 5, 6}, 2, rng);
  const Eigen::MatrixXcd m5 = testing::random_unitary(5, rng);
  const Eigen::MatrixXcd m6 = testing::random_unitary(6, rng);
  const Eigen::MatrixXcd rect = Eigen::MatrixXcd::Random(3, 7);
  for (std::size_t axis = 0; axis < 5; ++axis) {
    const Eigen::MatrixXcd& m = axis == 3 ? m5 : axis == 4 ? m6 : axis == 2 ? rect : testing::random_unitary(2, rng);
    FockVector a = base, b = base;
    oracle::apply_axis_matrix(a, axis, m, oracle::Kernel::serial);
    oracle::apply_axis_matrix(b, axis, m, oracle::Kernel::parallel);
    ASSERT_EQ(a.dims, b.dims);
    EXPECT_LT((a.amp - b.amp).cwiseAbs().maxCoeff(), 1e-13) << "axis " << axis;
  }
}

TEST(Loss, KeepsTraceAndMatchesAttenuatedCoherentState) {
  const cplx beta(1.5, -0.5);
  const auto rho = oracle::apply_loss(
      FockMixture::pure(oracle::prepare_coherent(CoherentLabel(beta), oracle::truncation_for(2.0))), 0, 0.4);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  const auto target = oracle::prepare_coherent(CoherentLabel(std::sqrt(0.4) * beta), oracle::truncation_for(2.0));
  EXPECT_NEAR(oracle::expectation(rho, target), 1.0, 1e-10);
}

TEST(Measurement, PatternDistributionIsNormalized) {
  const auto p = LinkParams::with_eta(2.0, 0.9, 0.8, 0.45);
  const auto d = oracle::pattern_distribution(p);
  EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-9);
  for (double x : d) EXPECT_GE(x, -1e-15);
  EXPECT_LT(d[7], 1e-12);
}

TEST(Measurement, PWindowIsAProjectorOnTheFullLine) {
  const Eigen::MatrixXcd e = oracle::p_window_matrix(25, -40.0, 40.0);
  EXPECT_LT((e - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Oracle, PatternsMatchClosedForms) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 6; ++k) {
    const double eta = 0.1 + 0.9 * u(rng);
    const double amp = 0.2 + 2.8 * u(rng);
    const auto p = LinkParams::with_eta(amp / std::sqrt(eta), 1.5 * u(rng), eta, 0.7071 * u(rng));
    const auto n = nominal_labels(p);
    for (auto in : {n.unrotated, n.plus, n.minus}) {
      const auto a = click_distribution(in, p);
      const auto b = oracle::click_distribution(in, p);
      for (int i = 0; i < 8; ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
    }
  }
}

TEST(Oracle, EvenPatternStateMatches) {
  const auto p = LinkParams::with_eta(2.5, 0.6, 0.6, 0.6);
  const std::array<ModePovm, 3> det{ModePovm::click(), ModePovm::click(), ModePovm::vacuum()};
  const std::array<ModeElement, 3> odet{ModeElement::click(), ModeElement::click(), ModeElement::vacuum()};
  const Eigen::Matrix4cd a = conditioned_link_operator(p, det);
  const Eigen::Matrix4cd b = oracle::conditioned_link_operator(p, odet);
  EXPECT_NEAR(a.trace().real(), b.trace().real(), 1e-8);
  EXPECT_LT(testing::trace_distance(testing::normalized(a), testing::normalized(b)), 1e-8);
}

TEST(Oracle, ParityBranchesMatch) {
  const auto p = LinkParams::with_eta(2.0, 0.9, 0.7, 0.3);
  for (auto [mine, theirs] : {std::pair{ModePovm::even_nonvacuum(), ModeElement::even_nonvacuum()},
                              std::pair{ModePovm::parity_odd(), ModeElement::parity_odd()}}) {
    const Eigen::Matrix4cd a = conditioned_link_operator(p, {ModePovm::vacuum(), ModePovm::vacuum(), mine});
    const Eigen::Matrix4cd b = oracle::conditioned_link_operator(p, {ModeElement::vacuum(), ModeElement::vacuum(), theirs});
    EXPECT_NEAR(a.trace().real(), b.trace().real(), 1e-8);
    EXPECT_LT(testing::trace_distance(testing::normalized(a), testing::normalized(b)), 1e-8);
  }
}

TEST(Oracle, HomodyneConditioningMatches) {
  const auto p = LinkParams::with_eta(2.0, 0.8, 0.6, 0.0);
  const double c = homodyne_window_center(p);
  const auto h = homodyne_p_condition(p, 0.7);
  const Eigen::Matrix4cd b = oracle::homodyne_link_operator(p, c, 0.7);
  EXPECT_NEAR(h.success_probability, b.trace().real(), 1e-8);
  EXPECT_LT(testing::trace_distance(h.state.matrix(), testing::normalized(b)), 1e-8);
}

TEST(Oracle, QubitQubusStateMatches) {
  const auto p = LinkParams::with_eta(2.5, 0.7, 0.5, 0.0);
  const HybridState s = qubit_qubus_state(p);
  const FockMixture rho = oracle::qubit_qubus_state(p);
  const Eigen::MatrixXcd fock = oracle::reduced_qubits_and_mode(rho, 0);
  const std::size_t dim = rho.components.front().dims.back();
  EXPECT_LT(testing::trace_distance(fock, to_number_basis(s, dim)), 1e-8);
}

TEST(Oracle, HomodyneSwapMatches) {
  const auto p = LinkParams::with_eta(1.5, 0.9, 0.8, 0.0);
  const auto cfg = BellMeasurement::for_link(p, Discriminator::p_homodyne, 0.8);
  const HybridState link = qubit_qubus_state(p);
  const SwapAnalysis a = analyze_swap(link, link, cfg, cfg.unrotated);
  const double center = std::sqrt(2.0) * std::imag(cfg.unrotated.value());
  const auto o = oracle::homodyne_swap(p, center, cfg.homodyne_halfwidth);
  double total = 0.0;
  for (const auto& b : o) total += b.probability;
  EXPECT_NEAR(a.success_probability, total, 1e-8);
  for (const auto& ob : o) {
    for (const auto& ab : a.branches) {
      if (ab.measurement.qubit_bit != ob.qubit_bit) continue;
      EXPECT_NEAR(ab.measurement.probability, ob.probability, 1e-8);
      const Eigen::MatrixXcd fock = oracle::reduced_qubits_and_mode(ob.state, 0);
      const std::size_t dim = ob.state.components.front().dims.back();
      EXPECT_LT(testing::trace_distance(testing::normalized(fock),
                                        testing::normalized(to_number_basis(ab.heralded, dim))),
                1e-8);
    }
  }
}

}  // namespace
}  // namespace qubus
