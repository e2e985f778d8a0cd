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

#include "qubus/hybrid_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qubus/quadrature.hpp"

namespace qubus {
namespace {

bool modes_close(const std::vector<CoherentLabel>& a, const std::vector<CoherentLabel>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!labels_close(a[i], b[i])) return false;
  }
  return true;
}

cplx overlap_product(const std::vector<CoherentLabel>& bra, const std::vector<CoherentLabel>& ket) {
  cplx r{1.0, 0.0};
  for (std::size_t i = 0; i < bra.size(); ++i) r *= coherent_overlap(bra[i], ket[i]);
  return r;
}

int qubit_bit(std::uint32_t index, std::size_t qubit, std::size_t n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

std::uint32_t with_bit(std::uint32_t index, std::size_t qubit, std::size_t n_qubits, int bit) {
  const std::uint32_t mask = 1u << (n_qubits - 1 - qubit);
  return bit ? (index | mask) : (index & ~mask);
}

std::uint32_t drop_bit(std::uint32_t index, std::size_t qubit, std::size_t n_qubits) {
  const std::size_t low_bits = n_qubits - 1 - qubit;
  const std::uint32_t low = index & ((1u << low_bits) - 1u);
  const std::uint32_t high = index >> (low_bits + 1);
  return (high << low_bits) | low;
}

void check_qubit(const HybridState& s, std::size_t qubit) {
  if (qubit >= s.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
  }
}

void check_mode(const HybridState& s, std::size_t mode) {
  if (mode >= s.num_modes()) {
    throw std::out_of_range("mode index " + std::to_string(mode) + " out of range");
  }
}

// (1/sqrt(pi)) * integral over the window of conj(<p|bra>) <p|ket> dp, with the
// coherent-state p wavefunction <p|beta> = pi^{-1/4} exp(-p^2/2 - i sqrt2 beta p + beta^2/2 - |beta|^2/2).
// The product is exp(log_overlap - (p + s)^2) / sqrt(pi) with s = i (ket - conj(bra)) / sqrt2;
// real and imaginary parts of the exponent are assembled separately to avoid overflow.
cplx p_window_element(CoherentLabel bra, CoherentLabel ket, double center, double halfwidth) {
  const cplx b = bra.value();
  const cplx k = ket.value();
  const double sr = -(k.imag() + b.imag()) / std::numbers::sqrt2;
  const double si = (k.real() - b.real()) / std::numbers::sqrt2;
  const double dim = k.imag() - b.imag();
  const double base_re = -0.5 * dim * dim;
  const double base_im = std::imag(std::conj(b) * k);

  constexpr double reach = 12.0;
  const double lo = std::max(center - halfwidth, -sr - reach);
  const double hi = std::min(center + halfwidth, -sr + reach);
  if (!(hi > lo)) return {0.0, 0.0};

  const double density = std::max(2.0, 4.0 * std::abs(si));
  const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) * density));
  auto integrand = [&](double p) -> cplx {
    const double u = p + sr;
    const double re = base_re - u * u;
    const double im = base_im - 2.0 * si * u;
    return std::exp(re) * std::polar(1.0, im);
  };
  return integrate_panels(integrand, lo, hi, panels) / std::sqrt(std::numbers::pi);
}

}  // namespace

HybridState::HybridState(std::size_t n_qubits, std::size_t n_modes)
    : n_qubits_(n_qubits), n_modes_(n_modes) {
  if (n_qubits > 16) throw std::invalid_argument("at most 16 qubits supported");
}

HybridState::HybridState(std::size_t n_qubits, std::size_t n_modes, std::vector<Branch> branches)
    : HybridState(n_qubits, n_modes) {
  for (const auto& b : branches) {
    if (b.ket_modes.size() != n_modes || b.bra_modes.size() != n_modes) {
      throw std::invalid_argument("branch mode count does not match state");
    }
    if (b.ket >= dim_qubits() || b.bra >= dim_qubits()) {
      throw std::invalid_argument("branch qubit index out of range");
    }
  }
  branches_ = canonicalize(std::move(branches));
}

HybridState HybridState::pure(std::size_t n_qubits, std::size_t n_modes,
                              std::span<const HybridKet> terms) {
  std::vector<Branch> out;
  out.reserve(terms.size() * terms.size());
  for (const auto& k : terms) {
    for (const auto& b : terms) {
      out.push_back({k.qubits, b.qubits, k.modes, b.modes, k.amplitude * std::conj(b.amplitude)});
    }
  }
  return HybridState(n_qubits, n_modes, std::move(out));
}

cplx HybridState::trace() const {
  cplx t{0.0, 0.0};
  for (const auto& b : branches_) {
    if (b.ket == b.bra) t += b.coeff * overlap_product(b.bra_modes, b.ket_modes);
  }
  return t;
}

bool HybridState::is_hermitian(double tol) const {
  double scale = 0.0;
  for (const auto& b : branches_) scale = std::max(scale, std::abs(b.coeff));
  const double limit = tol * std::max(scale, 1e-300);
  for (const auto& b : branches_) {
    const bool found = std::any_of(branches_.begin(), branches_.end(), [&](const Branch& p) {
      return p.ket == b.bra && p.bra == b.ket && modes_close(p.ket_modes, b.bra_modes) &&
             modes_close(p.bra_modes, b.ket_modes) &&
             std::abs(p.coeff - std::conj(b.coeff)) <= limit;
    });
    if (!found) return false;
  }
  return true;
}

std::vector<Branch> canonicalize(std::vector<Branch> branches) {
  std::vector<Branch> merged;
  std::vector<double> magnitude;
  merged.reserve(branches.size());
  for (auto& b : branches) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Branch& m) {
      return m.ket == b.ket && m.bra == b.bra && modes_close(m.ket_modes, b.ket_modes) &&
             modes_close(m.bra_modes, b.bra_modes);
    });
    if (it == merged.end()) {
      magnitude.push_back(std::abs(b.coeff));
      merged.push_back(std::move(b));
    } else {
      it->coeff += b.coeff;
      magnitude[static_cast<std::size_t>(it - merged.begin())] += std::abs(b.coeff);
    }
  }
  std::vector<Branch> out;
  out.reserve(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (std::abs(merged[i].coeff) > 1e-15 * magnitude[i]) out.push_back(std::move(merged[i]));
  }
  return out;
}

HybridState normalized(const HybridState& state) {
  const double tr = state.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw std::domain_error("cannot normalize a state with non-positive trace");
  }
  return scaled(state, cplx(1.0 / tr, 0.0));
}

HybridState scaled(const HybridState& state, cplx factor) {
  std::vector<Branch> out = state.branches();
  for (auto& b : out) b.coeff *= factor;
  return HybridState(state.num_qubits(), state.num_modes(), std::move(out));
}

HybridState sum(const HybridState& a, const HybridState& b) {
  if (a.num_qubits() != b.num_qubits() || a.num_modes() != b.num_modes()) {
    throw std::invalid_argument("sum of states on different systems");
  }
  std::vector<Branch> out = a.branches();
  out.insert(out.end(), b.branches().begin(), b.branches().end());
  return HybridState(a.num_qubits(), a.num_modes(), std::move(out));
}

HybridState tensor(const HybridState& a, const HybridState& b) {
  const std::size_t nq = a.num_qubits() + b.num_qubits();
  const std::size_t nm = a.num_modes() + b.num_modes();
  std::vector<Branch> out;
  out.reserve(a.branches().size() * b.branches().size());
  for (const auto& x : a.branches()) {
    for (const auto& y : b.branches()) {
      Branch z;
      z.ket = (x.ket << b.num_qubits()) | y.ket;
      z.bra = (x.bra << b.num_qubits()) | y.bra;
      z.ket_modes = x.ket_modes;
      z.ket_modes.insert(z.ket_modes.end(), y.ket_modes.begin(), y.ket_modes.end());
      z.bra_modes = x.bra_modes;
      z.bra_modes.insert(z.bra_modes.end(), y.bra_modes.begin(), y.bra_modes.end());
      z.coeff = x.coeff * y.coeff;
      out.push_back(std::move(z));
    }
  }
  return HybridState(nq, nm, std::move(out));
}

HybridState controlled_rotation(const HybridState& state, std::size_t qubit, std::size_t mode,
                                double theta) {
  check_qubit(state, qubit);
  check_mode(state, mode);
  const cplx phase = std::polar(1.0, theta);
  const std::size_t nq = state.num_qubits();
  std::vector<Branch> out = state.branches();
  for (auto& b : out) {
    if (qubit_bit(b.ket, qubit, nq)) b.ket_modes[mode] = CoherentLabel(b.ket_modes[mode].value() * phase);
    if (qubit_bit(b.bra, qubit, nq)) b.bra_modes[mode] = CoherentLabel(b.bra_modes[mode].value() * phase);
  }
  return HybridState(nq, state.num_modes(), std::move(out));
}

HybridState loss_channel(const HybridState& state, std::size_t mode, double eta) {
  check_mode(state, mode);
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("transmission must lie in (0, 1]");
  }
  const double keep = std::sqrt(eta);
  const double leak = std::sqrt(1.0 - eta);
  std::vector<Branch> out = state.branches();
  for (auto& b : out) {
    const cplx k = b.ket_modes[mode].value();
    const cplx r = b.bra_modes[mode].value();
    b.coeff *= coherent_overlap(CoherentLabel(leak * r), CoherentLabel(leak * k));
    b.ket_modes[mode] = CoherentLabel(k * keep);
    b.bra_modes[mode] = CoherentLabel(r * keep);
  }
  return HybridState(state.num_qubits(), state.num_modes(), std::move(out));
}

HybridState apply_qubit_gate(const HybridState& state, std::size_t qubit,
                             const Eigen::Matrix2cd& gate) {
  check_qubit(state, qubit);
  const std::size_t nq = state.num_qubits();
  std::vector<Branch> out;
  out.reserve(state.branches().size() * 4);
  for (const auto& b : state.branches()) {
    const int kq = qubit_bit(b.ket, qubit, nq);
    const int bq = qubit_bit(b.bra, qubit, nq);
    for (int k2 = 0; k2 < 2; ++k2) {
      const cplx uk = gate(k2, kq);
      if (uk == cplx{}) continue;
      for (int b2 = 0; b2 < 2; ++b2) {
        const cplx ub = std::conj(gate(b2, bq));
        if (ub == cplx{}) continue;
        Branch n = b;
        n.ket = with_bit(b.ket, qubit, nq, k2);
        n.bra = with_bit(b.bra, qubit, nq, b2);
        n.coeff = b.coeff * uk * ub;
        out.push_back(std::move(n));
      }
    }
  }
  return HybridState(nq, state.num_modes(), std::move(out));
}

HybridState displace(const HybridState& state, std::size_t mode, cplx d) {
  check_mode(state, mode);
  std::vector<Branch> out = state.branches();
  for (auto& b : out) {
    const cplx k = b.ket_modes[mode].value();
    const cplx r = b.bra_modes[mode].value();
    const double phase = std::imag(d * std::conj(k)) - std::imag(d * std::conj(r));
    b.coeff *= std::polar(1.0, phase);
    b.ket_modes[mode] = CoherentLabel(k + d);
    b.bra_modes[mode] = CoherentLabel(r + d);
  }
  return HybridState(state.num_qubits(), state.num_modes(), std::move(out));
}

HybridState split_mode(const HybridState& state, std::size_t mode,
                       std::span<const double> amplitudes) {
  check_mode(state, mode);
  if (amplitudes.empty()) throw std::invalid_argument("split_mode needs at least one output");
  auto fan_out = [&](std::vector<CoherentLabel>& labels) {
    const cplx beta = labels[mode].value();
    std::vector<CoherentLabel> outs;
    outs.reserve(amplitudes.size());
    for (double t : amplitudes) outs.emplace_back(t * beta);
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(mode));
    labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(mode), outs.begin(), outs.end());
  };
  std::vector<Branch> out = state.branches();
  for (auto& b : out) {
    fan_out(b.ket_modes);
    fan_out(b.bra_modes);
  }
  return HybridState(state.num_qubits(), state.num_modes() + amplitudes.size() - 1, std::move(out));
}

cplx ModePovm::element(CoherentLabel bra, CoherentLabel ket) const {
  const cplx z = std::conj(bra.value()) * ket.value();
  constexpr double small = 20.0;
  switch (kind) {
    case Kind::identity:
      return coherent_overlap(bra, ket);
    case Kind::vacuum:
      return vacuum_projection(bra, ket);
    case Kind::click:
      // <b|k> (1 - exp(-conj(b) k)); exact zero when either label is the vacuum.
      if (std::abs(z) < 1.0) return -coherent_overlap(bra, ket) * expm1(-z);
      return coherent_overlap(bra, ket) - vacuum_projection(bra, ket);
    case Kind::parity_even:
      if (std::abs(z) < small) return vacuum_projection(bra, ket) * std::cosh(z);
      return 0.5 * (coherent_overlap(bra, ket) + coherent_overlap(bra, CoherentLabel(-ket.value())));
    case Kind::parity_odd:
      if (std::abs(z) < small) return vacuum_projection(bra, ket) * std::sinh(z);
      return 0.5 * (coherent_overlap(bra, ket) - coherent_overlap(bra, CoherentLabel(-ket.value())));
    case Kind::even_nonvacuum:
      if (std::abs(z) < small) return vacuum_projection(bra, ket) * cosh_minus_one(z);
      return 0.5 * (coherent_overlap(bra, ket) + coherent_overlap(bra, CoherentLabel(-ket.value()))) -
             vacuum_projection(bra, ket);
    case Kind::p_window:
      return p_window_element(bra, ket, center, halfwidth);
  }
  throw std::logic_error("unknown povm kind");
}

HybridState measure_mode(const HybridState& state, std::size_t mode, const ModePovm& povm) {
  check_mode(state, mode);
  std::vector<Branch> out;
  out.reserve(state.branches().size());
  for (const auto& b : state.branches()) {
    Branch n = b;
    n.coeff *= povm.element(b.bra_modes[mode], b.ket_modes[mode]);
    n.ket_modes.erase(n.ket_modes.begin() + static_cast<std::ptrdiff_t>(mode));
    n.bra_modes.erase(n.bra_modes.begin() + static_cast<std::ptrdiff_t>(mode));
    if (n.coeff != cplx{}) out.push_back(std::move(n));
  }
  return HybridState(state.num_qubits(), state.num_modes() - 1, std::move(out));
}

HybridState project_qubit(const HybridState& state, std::size_t qubit, int bit) {
  check_qubit(state, qubit);
  if (bit != 0 && bit != 1) throw std::invalid_argument("qubit outcome must be 0 or 1");
  const std::size_t nq = state.num_qubits();
  std::vector<Branch> out;
  for (const auto& b : state.branches()) {
    if (qubit_bit(b.ket, qubit, nq) != bit || qubit_bit(b.bra, qubit, nq) != bit) continue;
    Branch n = b;
    n.ket = drop_bit(b.ket, qubit, nq);
    n.bra = drop_bit(b.bra, qubit, nq);
    out.push_back(std::move(n));
  }
  return HybridState(nq - 1, state.num_modes(), std::move(out));
}

Eigen::MatrixXcd trace_out_modes(const HybridState& state) {
  const auto d = static_cast<Eigen::Index>(state.dim_qubits());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& b : state.branches()) {
    rho(b.ket, b.bra) += b.coeff * overlap_product(b.bra_modes, b.ket_modes);
  }
  return rho;
}

cplx expectation(const HybridState& state, std::span<const HybridKet> psi) {
  cplx total{0.0, 0.0};
  for (const auto& b : state.branches()) {
    cplx left{0.0, 0.0};
    cplx right{0.0, 0.0};
    for (const auto& t : psi) {
      if (t.qubits == b.ket) left += std::conj(t.amplitude) * overlap_product(t.modes, b.ket_modes);
      if (t.qubits == b.bra) right += t.amplitude * overlap_product(b.bra_modes, t.modes);
    }
    total += b.coeff * left * right;
  }
  return total;
}

Eigen::Matrix4cd qubit_mode_density(const HybridState& state) {
  if (state.num_qubits() != 1 || state.num_modes() != 1) {
    throw std::invalid_argument("qubit_mode_density needs exactly one qubit and one mode");
  }
  std::vector<CoherentLabel> labels;
  auto note = [&](CoherentLabel l) {
    for (const auto& x : labels) {
      if (labels_close(x, l)) return;
    }
    labels.push_back(l);
  };
  for (const auto& b : state.branches()) {
    note(b.ket_modes[0]);
    note(b.bra_modes[0]);
  }
  if (labels.size() > 2) {
    throw std::invalid_argument("mode spans more than two coherent states");
  }
  // Coordinates of each label in the Gram-Schmidt basis {|l0>, normalized |l1> - <l0|l1>|l0>}.
  auto coords = [&](CoherentLabel l) -> Eigen::Vector2cd {
    if (labels_close(l, labels[0])) return {1.0, 0.0};
    const cplx g = coherent_overlap(labels[0], l);
    const double s = std::sqrt(-std::expm1(-std::norm(l.value() - labels[0].value())));
    return {g, s};
  };
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& b : state.branches()) {
    const Eigen::Vector2cd vk = coords(b.ket_modes[0]);
    const Eigen::Vector2cd vb = coords(b.bra_modes[0]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        rho(2 * b.ket + i, 2 * b.bra + j) += b.coeff * vk(i) * std::conj(vb(j));
      }
    }
  }
  return rho;
}

}  // namespace qubus
