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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qubus/coherent.hpp"

namespace qubus {

/// One dyad c |q_ket><q_bra| (x) |beta_ket...><beta_bra...| of a hybrid operator.
///
/// Qubit basis indices are big-endian: qubit 0 is the most significant bit, so
/// index 2a + c addresses |a>|c> for two qubits.
struct Branch {
  std::uint32_t ket = 0;
  std::uint32_t bra = 0;
  std::vector<CoherentLabel> ket_modes;
  std::vector<CoherentLabel> bra_modes;
  cplx coeff{0.0, 0.0};
};

/// A term amplitude |q>|beta_1 ... beta_m> of a pure hybrid ket.
struct HybridKet {
  std::uint32_t qubits = 0;
  std::vector<CoherentLabel> modes;
  cplx amplitude{1.0, 0.0};
};

/// Operator on n qubits (x) m optical modes in which every optical factor is a
/// coherent-state dyad. Values are immutable in practice: every transform is a
/// free function returning a new state, and the branch list is kept canonical.
class HybridState {
 public:
  HybridState(std::size_t n_qubits, std::size_t n_modes);
  HybridState(std::size_t n_qubits, std::size_t n_modes, std::vector<Branch> branches);

  /// |psi><psi| for psi = sum of the given terms (not renormalized).
  static HybridState pure(std::size_t n_qubits, std::size_t n_modes,
                          std::span<const HybridKet> terms);

  std::size_t num_qubits() const { return n_qubits_; }
  std::size_t num_modes() const { return n_modes_; }
  std::size_t dim_qubits() const { return std::size_t{1} << n_qubits_; }
  const std::vector<Branch>& branches() const { return branches_; }

  /// Tr over qubits and modes (coherent overlaps on diagonal qubit branches).
  cplx trace() const;

  /// Every branch has a conjugate partner within tol (scaled by the largest |c|).
  bool is_hermitian(double tol = 1e-12) const;

 private:
  std::size_t n_qubits_;
  std::size_t n_modes_;
  std::vector<Branch> branches_;
};

/// Merges branches with identical (ket, bra, labels) keys. Labels compare equal
/// within a few ulps. A merged branch is dropped when its coefficient sum has
/// cancelled to <= 1e-15 of the summed magnitudes.
std::vector<Branch> canonicalize(std::vector<Branch> branches);

/// State divided by its (real) trace. Throws std::domain_error on a zero trace.
HybridState normalized(const HybridState& state);

/// Scalar multiple.
HybridState scaled(const HybridState& state, cplx factor);

/// Sum of two states on the same systems.
HybridState sum(const HybridState& a, const HybridState& b);

/// a (x) b with qubits ordered [a..., b...] and modes [a..., b...].
HybridState tensor(const HybridState& a, const HybridState& b);

/// |1>_q rotates mode m by exp(i theta); |0>_q leaves it unchanged.
HybridState controlled_rotation(const HybridState& state, std::size_t qubit, std::size_t mode,
                                double theta);

/// Beam-splitter loss into a vacuum environment that is traced out.
/// Requires 0 < eta <= 1.
HybridState loss_channel(const HybridState& state, std::size_t mode, double eta);

/// U acting on qubit q (U rho U^dagger).
HybridState apply_qubit_gate(const HybridState& state, std::size_t qubit,
                             const Eigen::Matrix2cd& gate);

/// Displacement D(d) on mode m, including the coherent-state phase
/// D(d)|beta> = exp(i Im(d conj(beta))) |beta + d>.
HybridState displace(const HybridState& state, std::size_t mode, cplx d);

/// Passive fan-out of mode m against vacuum ancillas: |beta> -> |t_0 beta, t_1 beta, ...>.
/// The outputs occupy positions m, m+1, ... and later modes shift right.
HybridState split_mode(const HybridState& state, std::size_t mode, std::span<const double> amplitudes);

/// Single-mode measurement element, evaluated between coherent states.
struct ModePovm {
  enum class Kind {
    identity,         // trace the mode out
    vacuum,           // on/off detector, no click
    click,            // on/off detector, click
    parity_even,      // even photon number (vacuum included)
    parity_odd,       // odd photon number
    even_nonvacuum,   // click with even photon number
    p_window,         // p-quadrature outcome in [center - halfwidth, center + halfwidth]
  };
  Kind kind = Kind::identity;
  double center = 0.0;
  double halfwidth = 0.0;

  static ModePovm identity() { return {Kind::identity}; }
  static ModePovm vacuum() { return {Kind::vacuum}; }
  static ModePovm click() { return {Kind::click}; }
  static ModePovm parity_even() { return {Kind::parity_even}; }
  static ModePovm parity_odd() { return {Kind::parity_odd}; }
  static ModePovm even_nonvacuum() { return {Kind::even_nonvacuum}; }
  static ModePovm p_window(double center, double halfwidth) {
    return {Kind::p_window, center, halfwidth};
  }

  /// <bra|E|ket>.
  cplx element(CoherentLabel bra, CoherentLabel ket) const;
};

/// Applies E on mode m and traces the mode out. The result is unnormalized;
/// its trace is the outcome probability when the input is a normalized state.
HybridState measure_mode(const HybridState& state, std::size_t mode, const ModePovm& povm);

/// Projects qubit q onto |bit> and removes it (unnormalized).
HybridState project_qubit(const HybridState& state, std::size_t qubit, int bit);

/// Qubit operator left after tracing every mode, 2^n x 2^n.
Eigen::MatrixXcd trace_out_modes(const HybridState& state);

/// <psi|state|psi> for a pure hybrid ket psi on the same systems.
cplx expectation(const HybridState& state, std::span<const HybridKet> psi);

/// Qubit-qubit density for a 1-qubit, 1-mode state, taking the mode's span of
/// (at most two) distinct labels as an effective qubit. The mode basis is
/// Gram-Schmidt on the labels in order of first appearance.
Eigen::Matrix4cd qubit_mode_density(const HybridState& state);

}  // namespace qubus
