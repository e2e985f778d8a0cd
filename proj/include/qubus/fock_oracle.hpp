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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qubus/coherent.hpp"
#include "qubus/link.hpp"

// Brute-force photon-number-basis simulator used to check the branch algebra.
// Nothing here calls into the coherent-state branch code.
namespace qubus::oracle {

/// Raised when a truncated space cannot hold a state to the required accuracy.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Population allowed to leave the truncated space in any single operation.
inline constexpr double kLeakageTolerance = 1e-8;

/// Smallest N with N >= |beta|^2 + 10 sqrt(|beta|^2 + 1) + 20.
std::size_t truncation_for(double max_abs_amplitude);

enum class Kernel { serial, parallel };

/// Pure (unnormalized) vector on qubit axes of dimension 2 followed by mode
/// axes of dimension N+1. Row-major: the last axis varies fastest.
struct FockVector {
  std::size_t n_qubits = 0;
  std::vector<std::size_t> dims;
  Eigen::VectorXcd amp;

  std::size_t n_modes() const { return dims.size() - n_qubits; }
  std::size_t mode_axis(std::size_t mode) const { return n_qubits + mode; }
  double norm_squared() const { return amp.squaredNorm(); }
};

/// e^{-|beta|^2/2} beta^n / sqrt(n!) for n <= N. Throws TruncationError when
/// N is below truncation_for(|beta|).
FockVector prepare_coherent(CoherentLabel beta, std::size_t N);
FockVector prepare_vacuum(std::size_t N);
/// Qubit register with the given 2^n amplitudes (big-endian).
FockVector qubit_register(std::size_t n_qubits, std::span<const cplx> amplitudes);
/// Qubits [a, b], then modes [a, b].
FockVector tensor(const FockVector& a, const FockVector& b);

/// v <- M acting on one axis. The parallel kernel runs blocked matrix products
/// on OpenMP threads; the serial one is a plain loop nest.
void apply_axis_matrix(FockVector& v, std::size_t axis, const Eigen::MatrixXcd& m,
                       Kernel kernel = Kernel::parallel);

void apply_qubit_gate(FockVector& v, std::size_t qubit, const Eigen::Matrix2cd& gate,
                      Kernel kernel = Kernel::parallel);
/// |1>_q |n> -> e^{i n theta} |1>_q |n>.
void apply_controlled_rotation(FockVector& v, std::size_t qubit, std::size_t mode, double theta);
/// exp(d a^dag - d* a) built as a matrix exponential in a padded space.
/// Throws TruncationError when more than kLeakageTolerance leaves the space.
void apply_displacement(FockVector& v, std::size_t mode, cplx d, Kernel kernel = Kernel::parallel);
/// <m|D(d)|n> for m, n < dim, cut from the exponential in the padded space.
Eigen::MatrixXcd displacement_matrix(std::size_t dim, cplx d);
/// Two-mode splitter with |beta, 0> -> |t beta, r beta>, t^2 + r^2 = 1, applied
/// block by block in total photon number.
void apply_beamsplitter(FockVector& v, std::size_t mode_a, std::size_t mode_b, double t, double r);
/// Sets a mode's truncation to N: pads with empty levels, or drops levels
/// above N and throws TruncationError when the dropped population exceeds
/// kLeakageTolerance of the norm.
void resize_mode(FockVector& v, std::size_t mode, std::size_t N);
/// Appends a vacuum mode of dimension N+1 after the last mode.
void append_vacuum_mode(FockVector& v, std::size_t N);
/// Moves mode `from` to position `to`, shifting the modes in between.
void move_mode(FockVector& v, std::size_t from, std::size_t to);

/// rho = sum_k |v_k><v_k| with unnormalized components.
struct FockMixture {
  std::vector<FockVector> components;

  static FockMixture pure(FockVector v);
  double trace() const;
};

/// Kraus operators K_k |n> = sqrt(C(n,k)) eta^{(n-k)/2} (1-eta)^{k/2} |n-k>,
/// followed by a Gram-matrix compression of the component list.
FockMixture apply_loss(const FockMixture& rho, std::size_t mode, double eta);
/// Keeps the eigen-components of rho carrying more than rel_cut of its trace.
FockMixture compress(const FockMixture& rho, double rel_cut = 1e-15);

/// Tensor product of every pair of components.
FockMixture tensor(const FockMixture& a, const FockMixture& b);
/// Selects qubit q = bit and removes the qubit axis (unnormalized).
FockMixture project_qubit(const FockMixture& rho, std::size_t qubit, int bit);
/// Partial trace over one mode.
FockMixture trace_mode(const FockMixture& rho, std::size_t mode);
/// <psi|rho|psi>.
double expectation(const FockMixture& rho, const FockVector& psi);

/// Single-mode measurement elements in the number basis.
struct ModeElement {
  enum class Kind { vacuum, click, number, parity_even, parity_odd, even_nonvacuum, p_window };
  Kind kind = Kind::vacuum;
  std::size_t n = 0;
  double center = 0.0;
  double halfwidth = 0.0;

  static ModeElement vacuum() { return {Kind::vacuum}; }
  static ModeElement click() { return {Kind::click}; }
  static ModeElement number(std::size_t n) { return {Kind::number, n}; }
  static ModeElement parity_even() { return {Kind::parity_even}; }
  static ModeElement parity_odd() { return {Kind::parity_odd}; }
  static ModeElement even_nonvacuum() { return {Kind::even_nonvacuum}; }
  static ModeElement p_window(double center, double halfwidth) {
    return {Kind::p_window, 0, center, halfwidth};
  }

  /// <m|E|n> on a mode of dimension dim.
  Eigen::MatrixXcd matrix(std::size_t dim) const;
};

/// <m|E|n> for E the projector onto p in [lo, hi], using <p|n> = (-i)^n psi_n(p)
/// with Hermite functions psi_n (x = (a + a^dag)/sqrt2).
Eigen::MatrixXcd p_window_matrix(std::size_t dim, double lo, double hi);

/// Applies the Kraus operator sqrt(E) on a mode; later tracing gives Tr(E rho).
FockMixture apply_element(const FockMixture& rho, std::size_t mode, const ModeElement& e);
FockVector apply_element(const FockVector& v, std::size_t mode, const ModeElement& e);

/// Qubit operator after tracing every mode (unnormalized).
Eigen::MatrixXcd reduced_qubits(const FockMixture& rho);
/// Qubit-and-mode operator after tracing the other modes.
Eigen::MatrixXcd reduced_qubits_and_mode(const FockMixture& rho, std::size_t mode);

/// Probabilities of the 8 on/off patterns on three consecutive modes starting
/// at `first_mode`; index bit m set when detector m clicked.
std::array<double, 8> onoff_pattern_distribution(const FockVector& v, std::size_t first_mode);

/// Receiver splitters on mode m: amplitudes (lambda, lambda, sqrt(1-2 lambda^2))
/// from two cascaded splitters at the mode's current truncation. Mode m
/// becomes m, m+1, m+2.
void split_receiver(FockVector& v, std::size_t mode, double lambda_bs);
/// Displacements -lambda*plus, -lambda*minus, -sqrt(1-2 lambda^2)*unrotated
/// that follow the splitters on the three outputs.
std::array<cplx, 3> receiver_displacements(double lambda_bs, cplx unrotated, cplx plus, cplx minus);
/// split_receiver, then each output padded to at least output_N and displaced.
void apply_receiver(FockVector& v, std::size_t mode, double lambda_bs, cplx unrotated, cplx plus,
                    cplx minus, std::size_t output_N = 0, Kernel kernel = Kernel::parallel);

// Pipelines rebuilt in the number basis from LinkParams alone.

/// Click-pattern distribution for one coherent input to the link receiver.
std::array<double, 8> click_distribution(CoherentLabel input, const LinkParams& params);
/// Link-qubus pattern distribution with priors 1/2, 1/4, 1/4.
std::array<double, 8> pattern_distribution(const LinkParams& params);
/// (|0>|alpha> + |1>|alpha e^{i theta}>)/sqrt2 through the lossy channel.
FockMixture qubit_qubus_state(const LinkParams& params);
/// Qubit A, qubit C and the qubus after the full link pipeline including the
/// local phase corrections.
FockMixture link_state(const LinkParams& params);
/// Unnormalized two-qubit operator after the receiver and the detector elements.
Eigen::Matrix4cd conditioned_link_operator(const LinkParams& params,
                                           const std::array<ModeElement, 3>& detectors);
/// Unnormalized two-qubit operator after a p-window on the link qubus.
Eigen::Matrix4cd homodyne_link_operator(const LinkParams& params, double center, double halfwidth);

struct SwapBranch {
  int qubit_bit = 0;
  double probability = 0.0;
  FockMixture state;  ///< qubit 1 and mode 4, unnormalized, Z applied for bit 1
};

/// Two copies of qubit_qubus_state swapped with a p-window hybrid Bell
/// measurement on (qubit 3, mode 2).
std::vector<SwapBranch> homodyne_swap(const LinkParams& params, double center, double halfwidth);

}  // namespace qubus::oracle
