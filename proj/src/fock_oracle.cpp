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

#include "qubus/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace qubus::oracle {
namespace {

using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t product(const std::vector<std::size_t>& dims, std::size_t lo, std::size_t hi) {
  std::size_t p = 1;
  for (std::size_t i = lo; i < hi; ++i) p *= dims[i];
  return p;
}

void check_axis(const FockVector& v, std::size_t axis) {
  if (axis >= v.dims.size()) throw std::out_of_range("axis out of range");
}

void check_mode(const FockVector& v, std::size_t mode) {
  if (mode >= v.n_modes()) throw std::out_of_range("mode out of range");
}

std::string leak_message(const char* op, double leaked) {
  return std::string(op) + ": population " + std::to_string(leaked) +
         " left the truncated space; raise the truncation";
}

// Axis permutation: new axis j is old axis perm[j].
FockVector permute_axes(const FockVector& v, const std::vector<std::size_t>& perm,
                        std::size_t new_n_qubits) {
  const std::size_t rank = v.dims.size();
  std::vector<std::size_t> old_strides(rank, 1);
  for (std::size_t i = rank - 1; i-- > 0;) old_strides[i] = old_strides[i + 1] * v.dims[i + 1];
  FockVector out;
  out.n_qubits = new_n_qubits;
  out.dims.resize(rank);
  for (std::size_t j = 0; j < rank; ++j) out.dims[j] = v.dims[perm[j]];
  out.amp.resize(v.amp.size());
  std::vector<std::size_t> idx(rank, 0);
  for (Eigen::Index flat = 0; flat < out.amp.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t j = 0; j < rank; ++j) src += idx[j] * old_strides[perm[j]];
    out.amp(flat) = v.amp(static_cast<Eigen::Index>(src));
    for (std::size_t j = rank; j-- > 0;) {
      if (++idx[j] < out.dims[j]) break;
      idx[j] = 0;
    }
  }
  return out;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& e) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// Real antisymmetric generator a b^dag - a^dag b on the block |k, n-k>, k = 0..n.
Eigen::MatrixXd splitter_block(std::size_t n, double phi) {
  const auto size = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t k = 1; k <= n; ++k) {
    const double amp = std::sqrt(static_cast<double>(k) * static_cast<double>(n - k + 1));
    g(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) += amp;
    g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) -= amp;
  }
  return (phi * g).exp();
}

}  // namespace

std::size_t truncation_for(double max_abs_amplitude) {
  const double n2 = max_abs_amplitude * max_abs_amplitude;
  return static_cast<std::size_t>(std::ceil(n2 + 10.0 * std::sqrt(n2 + 1.0) + 20.0));
}

FockVector prepare_coherent(CoherentLabel beta, std::size_t N) {
  const cplx b = beta.value();
  if (N < truncation_for(std::abs(b))) {
    throw TruncationError("truncation " + std::to_string(N) + " too small for |beta| = " +
                          std::to_string(std::abs(b)));
  }
  FockVector v;
  v.dims = {N + 1};
  v.amp.resize(static_cast<Eigen::Index>(N + 1));
  cplx c = std::exp(-0.5 * std::norm(b));
  v.amp(0) = c;
  for (std::size_t n = 1; n <= N; ++n) {
    c *= b / std::sqrt(static_cast<double>(n));
    v.amp(static_cast<Eigen::Index>(n)) = c;
  }
  return v;
}

FockVector prepare_vacuum(std::size_t N) {
  FockVector v;
  v.dims = {N + 1};
  v.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N + 1));
  v.amp(0) = 1.0;
  return v;
}

FockVector qubit_register(std::size_t n_qubits, std::span<const cplx> amplitudes) {
  if (amplitudes.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("register needs 2^n amplitudes");
  }
  FockVector v;
  v.n_qubits = n_qubits;
  v.dims.assign(n_qubits, 2);
  v.amp = Eigen::Map<const Eigen::VectorXcd>(amplitudes.data(),
                                             static_cast<Eigen::Index>(amplitudes.size()));
  return v;
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  FockVector k;
  k.dims = a.dims;
  k.dims.insert(k.dims.end(), b.dims.begin(), b.dims.end());
  k.amp.resize(a.amp.size() * b.amp.size());
  for (Eigen::Index i = 0; i < a.amp.size(); ++i) {
    k.amp.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
  }
  // [aq, am, bq, bm] -> [aq, bq, am, bm]
  std::vector<std::size_t> perm;
  const std::size_t am = a.n_modes();
  for (std::size_t i = 0; i < a.n_qubits; ++i) perm.push_back(i);
  for (std::size_t i = 0; i < b.n_qubits; ++i) perm.push_back(a.dims.size() + i);
  for (std::size_t i = 0; i < am; ++i) perm.push_back(a.n_qubits + i);
  for (std::size_t i = 0; i < b.n_modes(); ++i) perm.push_back(a.dims.size() + b.n_qubits + i);
  return permute_axes(k, perm, a.n_qubits + b.n_qubits);
}

void apply_axis_matrix(FockVector& v, std::size_t axis, const Eigen::MatrixXcd& m, Kernel kernel) {
  check_axis(v, axis);
  const std::size_t d = v.dims[axis];
  if (static_cast<std::size_t>(m.cols()) != d) throw std::invalid_argument("matrix/axis mismatch");
  const std::size_t rows = static_cast<std::size_t>(m.rows());
  const std::size_t outer = product(v.dims, 0, axis);
  const std::size_t inner = product(v.dims, axis + 1, v.dims.size());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(outer * rows * inner));

  if (kernel == Kernel::serial) {
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < inner; ++i) {
          cplx acc = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) *
                   v.amp(static_cast<Eigen::Index>((o * d + j) * inner + i));
          }
          out(static_cast<Eigen::Index>((o * rows + r) * inner + i)) = acc;
        }
      }
    }
  } else if (inner == 1) {
    Eigen::Map<const RowMajorMatrix> x(v.amp.data(), static_cast<Eigen::Index>(outer),
                                       static_cast<Eigen::Index>(d));
    Eigen::Map<RowMajorMatrix> y(out.data(), static_cast<Eigen::Index>(outer),
                                 static_cast<Eigen::Index>(rows));
    y.noalias() = x * m.transpose();
  } else {
    const Eigen::MatrixXcd mt = m.transpose();
    const auto n_outer = static_cast<std::int64_t>(outer);
#pragma omp parallel for schedule(static)
    for (std::int64_t o = 0; o < n_outer; ++o) {
      const auto uo = static_cast<std::size_t>(o);
      // Column-major view: entry (i, j) sits at j * inner + i.
      Eigen::Map<const Eigen::MatrixXcd> x(v.amp.data() + uo * d * inner,
                                           static_cast<Eigen::Index>(inner),
                                           static_cast<Eigen::Index>(d));
      Eigen::Map<Eigen::MatrixXcd> y(out.data() + uo * rows * inner,
                                     static_cast<Eigen::Index>(inner),
                                     static_cast<Eigen::Index>(rows));
      y.noalias() = x * mt;
    }
  }
  v.amp = std::move(out);
  v.dims[axis] = rows;
}

void apply_qubit_gate(FockVector& v, std::size_t qubit, const Eigen::Matrix2cd& gate, Kernel kernel) {
  if (qubit >= v.n_qubits) throw std::out_of_range("qubit out of range");
  apply_axis_matrix(v, qubit, gate, kernel);
}

void apply_controlled_rotation(FockVector& v, std::size_t qubit, std::size_t mode, double theta) {
  if (qubit >= v.n_qubits) throw std::out_of_range("qubit out of range");
  check_mode(v, mode);
  const std::size_t axis = v.mode_axis(mode);
  const std::size_t q_stride = product(v.dims, qubit + 1, v.dims.size());
  const std::size_t m_stride = product(v.dims, axis + 1, v.dims.size());
  const std::size_t dim = v.dims[axis];
  for (Eigen::Index flat = 0; flat < v.amp.size(); ++flat) {
    const auto f = static_cast<std::size_t>(flat);
    if ((f / q_stride) % 2 == 0) continue;
    const auto n = static_cast<double>((f / m_stride) % dim);
    v.amp(flat) *= std::polar(1.0, n * theta);
  }
}

Eigen::MatrixXcd displacement_matrix(std::size_t dim, cplx d) {
  const std::size_t padded = dim + truncation_for(std::abs(d));
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(padded),
                                                static_cast<Eigen::Index>(padded));
  for (std::size_t n = 0; n + 1 < padded; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1));
    const auto i = static_cast<Eigen::Index>(n);
    gen(i + 1, i) = d * s;             // d a^dag
    gen(i, i + 1) = -std::conj(d) * s;  // -d* a
  }
  const auto k = static_cast<Eigen::Index>(dim);
  return gen.exp().topLeftCorner(k, k);
}

void apply_displacement(FockVector& v, std::size_t mode, cplx d, Kernel kernel) {
  check_mode(v, mode);
  const std::size_t axis = v.mode_axis(mode);
  const double before = v.norm_squared();
  apply_axis_matrix(v, axis, displacement_matrix(v.dims[axis], d), kernel);
  const double after = v.norm_squared();
  if (std::abs(before - after) > kLeakageTolerance * before) {
    throw TruncationError(leak_message("displacement", before - after));
  }
}

void resize_mode(FockVector& v, std::size_t mode, std::size_t N) {
  check_mode(v, mode);
  const std::size_t axis = v.mode_axis(mode);
  const std::size_t dim = v.dims[axis];
  if (N + 1 == dim) return;
  const std::size_t keep = std::min(dim, N + 1);
  const std::size_t outer = product(v.dims, 0, axis);
  const std::size_t inner = product(v.dims, axis + 1, v.dims.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(outer * (N + 1) * inner));
  for (std::size_t o = 0; o < outer; ++o) {
    out.segment(static_cast<Eigen::Index>(o * (N + 1) * inner), static_cast<Eigen::Index>(keep * inner)) =
        v.amp.segment(static_cast<Eigen::Index>(o * dim * inner), static_cast<Eigen::Index>(keep * inner));
  }
  const double total = v.norm_squared();
  const double dropped = total - out.squaredNorm();
  if (dropped > kLeakageTolerance * total) throw TruncationError(leak_message("truncation", dropped));
  v.amp = std::move(out);
  v.dims[axis] = N + 1;
}

void apply_beamsplitter(FockVector& v, std::size_t mode_a, std::size_t mode_b, double t, double r) {
  check_mode(v, mode_a);
  check_mode(v, mode_b);
  if (mode_a == mode_b) throw std::invalid_argument("splitter needs two distinct modes");
  if (std::abs(t * t + r * r - 1.0) > 1e-12) throw std::invalid_argument("t^2 + r^2 must be 1");
  const std::size_t ax_a = v.mode_axis(mode_a);
  const std::size_t ax_b = v.mode_axis(mode_b);
  const std::size_t da = v.dims[ax_a];
  const std::size_t db = v.dims[ax_b];
  const std::size_t sa = product(v.dims, ax_a + 1, v.dims.size());
  const std::size_t sb = product(v.dims, ax_b + 1, v.dims.size());
  const std::size_t complete = std::min(da, db);  // blocks n < complete fit entirely
  const double phi = std::atan2(r, t);

  std::vector<Eigen::MatrixXcd> blocks(complete);
  for (std::size_t n = 0; n < complete; ++n) blocks[n] = splitter_block(n, phi).cast<cplx>();

  // Offsets with both split axes at zero.
  std::vector<std::size_t> bases;
  for (Eigen::Index flat = 0; flat < v.amp.size(); ++flat) {
    const auto f = static_cast<std::size_t>(flat);
    if ((f / sa) % da == 0 && (f / sb) % db == 0) bases.push_back(f);
  }

  double dropped = 0.0;
  const auto n_bases = static_cast<std::int64_t>(bases.size());
#pragma omp parallel for schedule(static) reduction(+ : dropped)
  for (std::int64_t bi = 0; bi < n_bases; ++bi) {
    const std::size_t base = bases[static_cast<std::size_t>(bi)];
    Eigen::VectorXcd x;
    for (std::size_t n = 0; n + 1 < da + db; ++n) {
      const std::size_t k_lo = n >= db ? n - db + 1 : 0;
      const std::size_t k_hi = std::min(n, da - 1);
      if (n >= complete) {
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
          cplx& a = v.amp(static_cast<Eigen::Index>(base + k * sa + (n - k) * sb));
          dropped += std::norm(a);
          a = 0.0;
        }
        continue;
      }
      x.resize(static_cast<Eigen::Index>(n + 1));
      for (std::size_t k = 0; k <= n; ++k) {
        x(static_cast<Eigen::Index>(k)) = v.amp(static_cast<Eigen::Index>(base + k * sa + (n - k) * sb));
      }
      const Eigen::VectorXcd y = blocks[n] * x;
      for (std::size_t k = 0; k <= n; ++k) {
        v.amp(static_cast<Eigen::Index>(base + k * sa + (n - k) * sb)) = y(static_cast<Eigen::Index>(k));
      }
    }
  }
  if (dropped > kLeakageTolerance * (v.norm_squared() + dropped)) {
    throw TruncationError(leak_message("beam splitter", dropped));
  }
}

void append_vacuum_mode(FockVector& v, std::size_t N) {
  const auto dim = static_cast<Eigen::Index>(N + 1);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.amp.size() * dim);
  for (Eigen::Index i = 0; i < v.amp.size(); ++i) out(i * dim) = v.amp(i);
  v.amp = std::move(out);
  v.dims.push_back(N + 1);
}

void move_mode(FockVector& v, std::size_t from, std::size_t to) {
  check_mode(v, from);
  check_mode(v, to);
  std::vector<std::size_t> modes(v.n_modes());
  std::iota(modes.begin(), modes.end(), 0);
  modes.erase(modes.begin() + static_cast<std::ptrdiff_t>(from));
  modes.insert(modes.begin() + static_cast<std::ptrdiff_t>(to), from);
  std::vector<std::size_t> perm(v.n_qubits);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t m : modes) perm.push_back(v.n_qubits + m);
  v = permute_axes(v, perm, v.n_qubits);
}

FockMixture FockMixture::pure(FockVector v) {
  FockMixture m;
  m.components.push_back(std::move(v));
  return m;
}

double FockMixture::trace() const {
  double t = 0.0;
  for (const auto& c : components) t += c.norm_squared();
  return t;
}

FockMixture compress(const FockMixture& rho, double rel_cut) {
  if (rho.components.size() <= 1) return rho;
  const auto k = static_cast<Eigen::Index>(rho.components.size());
  const Eigen::Index size = rho.components.front().amp.size();
  Eigen::MatrixXcd v(size, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& c = rho.components[static_cast<std::size_t>(j)];
    if (c.amp.size() != size) throw std::invalid_argument("mixture components differ in shape");
    v.col(j) = c.amp;
  }
  // rho = V V^dag = sum_j (V w_j)(V w_j)^dag for the eigenvectors w_j of V^dag V.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(v.adjoint() * v);
  const double total = es.eigenvalues().cwiseMax(0.0).sum();
  FockMixture out;
  for (Eigen::Index j = k; j-- > 0;) {
    if (!(es.eigenvalues()(j) > rel_cut * total)) continue;
    FockVector c = rho.components.front();
    c.amp = v * es.eigenvectors().col(j);
    out.components.push_back(std::move(c));
  }
  return out;
}

FockMixture apply_loss(const FockMixture& rho, std::size_t mode, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (eta == 1.0) return rho;
  FockMixture out;
  for (const auto& c : rho.components) {
    check_mode(c, mode);
    const std::size_t dim = c.dims[c.mode_axis(mode)];
    for (std::size_t k = 0; k < dim; ++k) {
      Eigen::MatrixXcd kraus = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                      static_cast<Eigen::Index>(dim));
      for (std::size_t n = k; n < dim; ++n) {
        const double log_c = std::lgamma(static_cast<double>(n) + 1.0) -
                             std::lgamma(static_cast<double>(k) + 1.0) -
                             std::lgamma(static_cast<double>(n - k) + 1.0);
        const double log_amp = 0.5 * (log_c + static_cast<double>(n - k) * std::log(eta) +
                                      static_cast<double>(k) * std::log1p(-eta));
        kraus(static_cast<Eigen::Index>(n - k), static_cast<Eigen::Index>(n)) = std::exp(log_amp);
      }
      FockVector out_c = c;
      apply_axis_matrix(out_c, c.mode_axis(mode), kraus);
      if (out_c.norm_squared() > 0.0) out.components.push_back(std::move(out_c));
    }
  }
  return compress(out);
}

FockMixture tensor(const FockMixture& a, const FockMixture& b) {
  FockMixture out;
  for (const auto& x : a.components) {
    for (const auto& y : b.components) out.components.push_back(tensor(x, y));
  }
  return out;
}

FockMixture project_qubit(const FockMixture& rho, std::size_t qubit, int bit) {
  FockMixture out;
  for (const auto& c : rho.components) {
    if (qubit >= c.n_qubits) throw std::out_of_range("qubit out of range");
    const std::size_t outer = product(c.dims, 0, qubit);
    const std::size_t inner = product(c.dims, qubit + 1, c.dims.size());
    FockVector p;
    p.n_qubits = c.n_qubits - 1;
    p.dims = c.dims;
    p.dims.erase(p.dims.begin() + static_cast<std::ptrdiff_t>(qubit));
    p.amp.resize(static_cast<Eigen::Index>(outer * inner));
    for (std::size_t o = 0; o < outer; ++o) {
      p.amp.segment(static_cast<Eigen::Index>(o * inner), static_cast<Eigen::Index>(inner)) =
          c.amp.segment(static_cast<Eigen::Index>((2 * o + static_cast<std::size_t>(bit)) * inner),
                        static_cast<Eigen::Index>(inner));
    }
    out.components.push_back(std::move(p));
  }
  return out;
}

FockMixture trace_mode(const FockMixture& rho, std::size_t mode) {
  FockMixture out;
  for (const auto& c : rho.components) {
    check_mode(c, mode);
    const std::size_t axis = c.mode_axis(mode);
    const std::size_t dim = c.dims[axis];
    const std::size_t outer = product(c.dims, 0, axis);
    const std::size_t inner = product(c.dims, axis + 1, c.dims.size());
    for (std::size_t n = 0; n < dim; ++n) {
      FockVector s;
      s.n_qubits = c.n_qubits;
      s.dims = c.dims;
      s.dims.erase(s.dims.begin() + static_cast<std::ptrdiff_t>(axis));
      s.amp.resize(static_cast<Eigen::Index>(outer * inner));
      for (std::size_t o = 0; o < outer; ++o) {
        s.amp.segment(static_cast<Eigen::Index>(o * inner), static_cast<Eigen::Index>(inner)) =
            c.amp.segment(static_cast<Eigen::Index>((o * dim + n) * inner),
                          static_cast<Eigen::Index>(inner));
      }
      if (s.norm_squared() > 0.0) out.components.push_back(std::move(s));
    }
  }
  return compress(out);
}

double expectation(const FockMixture& rho, const FockVector& psi) {
  double e = 0.0;
  for (const auto& c : rho.components) {
    if (c.dims != psi.dims) throw std::invalid_argument("expectation shape mismatch");
    e += std::norm(psi.amp.dot(c.amp));
  }
  return e;
}

Eigen::MatrixXcd p_window_matrix(std::size_t dim, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dim);
  // Hermite functions are negligible beyond the classical turning point plus a margin.
  const double edge = std::sqrt(2.0 * static_cast<double>(dim) + 1.0) + 12.0;
  lo = std::max(lo, -edge);
  hi = std::min(hi, edge);
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(n, n);
  if (hi > lo) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / 0.25));
    const double h = (hi - lo) / static_cast<double>(panels);
    Eigen::VectorXd psi(n);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = lo + (static_cast<double>(p) + 0.5) * h;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sign : {-1.0, 1.0}) {
          if (x[i] == 0.0 && sign < 0.0) continue;
          const double q = mid + sign * 0.5 * h * x[i];
          psi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * q * q);
          if (n > 1) psi(1) = std::numbers::sqrt2 * q * psi(0);
          for (Eigen::Index k = 1; k + 1 < n; ++k) {
            const double kk = static_cast<double>(k);
            psi(k + 1) = std::sqrt(2.0 / (kk + 1.0)) * q * psi(k) - std::sqrt(kk / (kk + 1.0)) * psi(k - 1);
          }
          overlap.noalias() += (0.5 * h * w[i]) * psi * psi.transpose();
        }
      }
    }
  }
  // <m|E|n> = conj((-i)^m) (-i)^n int psi_m psi_n = i^{m-n} overlap.
  Eigen::MatrixXcd e(n, n);
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) e(a, b) = powers[((a - b) % 4 + 4) % 4] * overlap(a, b);
  }
  return e;
}

Eigen::MatrixXcd ModeElement::matrix(std::size_t dim) const {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    bool on = false;
    switch (kind) {
      case Kind::vacuum: on = k == 0; break;
      case Kind::click: on = k != 0; break;
      case Kind::number: on = static_cast<std::size_t>(k) == n; break;
      case Kind::parity_even: on = k % 2 == 0; break;
      case Kind::parity_odd: on = k % 2 == 1; break;
      case Kind::even_nonvacuum: on = k != 0 && k % 2 == 0; break;
      case Kind::p_window: return p_window_matrix(dim, center - halfwidth, center + halfwidth);
    }
    if (on) e(k, k) = 1.0;
  }
  return e;
}

FockVector apply_element(const FockVector& v, std::size_t mode, const ModeElement& e) {
  check_mode(v, mode);
  const std::size_t axis = v.mode_axis(mode);
  const Eigen::MatrixXcd m = e.matrix(v.dims[axis]);
  FockVector out = v;
  apply_axis_matrix(out, axis, e.kind == ModeElement::Kind::p_window ? hermitian_sqrt(m) : m);
  return out;
}

FockMixture apply_element(const FockMixture& rho, std::size_t mode, const ModeElement& e) {
  FockMixture out;
  for (const auto& c : rho.components) {
    FockVector v = apply_element(c, mode, e);
    if (v.norm_squared() > 0.0) out.components.push_back(std::move(v));
  }
  return out;
}

Eigen::MatrixXcd reduced_qubits(const FockMixture& rho) {
  if (rho.components.empty()) return Eigen::MatrixXcd::Zero(1, 1);
  const std::size_t q = std::size_t{1} << rho.components.front().n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  for (const auto& c : rho.components) {
    const auto rest = static_cast<Eigen::Index>(static_cast<std::size_t>(c.amp.size()) / q);
    Eigen::Map<const RowMajorMatrix> psi(c.amp.data(), static_cast<Eigen::Index>(q), rest);
    out.noalias() += psi * psi.adjoint();
  }
  return out;
}

Eigen::MatrixXcd reduced_qubits_and_mode(const FockMixture& rho, std::size_t mode) {
  FockMixture moved;
  for (const auto& c : rho.components) {
    FockVector v = c;
    move_mode(v, mode, 0);
    // Fold the mode into the qubit block by treating it as the last "qubit" axis.
    v.n_qubits += 1;
    moved.components.push_back(std::move(v));
  }
  if (moved.components.empty()) return Eigen::MatrixXcd::Zero(1, 1);
  const auto& f = moved.components.front();
  const std::size_t block = product(f.dims, 0, f.n_qubits);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(block),
                                                static_cast<Eigen::Index>(block));
  for (const auto& c : moved.components) {
    const auto rest = static_cast<Eigen::Index>(static_cast<std::size_t>(c.amp.size()) / block);
    Eigen::Map<const RowMajorMatrix> psi(c.amp.data(), static_cast<Eigen::Index>(block), rest);
    out.noalias() += psi * psi.adjoint();
  }
  return out;
}

std::array<double, 8> onoff_pattern_distribution(const FockVector& v, std::size_t first_mode) {
  check_mode(v, first_mode + 2);
  std::array<std::size_t, 3> stride{};
  std::array<std::size_t, 3> dim{};
  for (std::size_t m = 0; m < 3; ++m) {
    const std::size_t axis = v.mode_axis(first_mode + m);
    stride[m] = product(v.dims, axis + 1, v.dims.size());
    dim[m] = v.dims[axis];
  }
  std::array<double, 8> p{};
  for (Eigen::Index flat = 0; flat < v.amp.size(); ++flat) {
    const auto f = static_cast<std::size_t>(flat);
    std::size_t index = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      if ((f / stride[m]) % dim[m] != 0) index |= std::size_t{1} << m;
    }
    p[index] += std::norm(v.amp(flat));
  }
  return p;
}

void split_receiver(FockVector& v, std::size_t mode, double lambda_bs) {
  check_mode(v, mode);
  if (!(lambda_bs >= 0.0 && 2.0 * lambda_bs * lambda_bs <= 1.0 + 1e-15)) {
    throw std::invalid_argument("lambda must lie in [0, 1/sqrt2]");
  }
  const std::size_t N = v.dims[v.mode_axis(mode)] - 1;
  const double lam = lambda_bs;
  const double rest = std::sqrt(std::max(0.0, 1.0 - lam * lam));
  const double t3 = std::sqrt(third_port_weight(lam));
  append_vacuum_mode(v, N);
  append_vacuum_mode(v, N);
  const std::size_t a = v.n_modes() - 2;
  const std::size_t b = v.n_modes() - 1;
  // mode keeps sqrt(1 - lam^2), a takes lam; then mode keeps t3, b takes lam.
  apply_beamsplitter(v, mode, a, rest, lam);
  apply_beamsplitter(v, mode, b, t3 / rest, lam / rest);
  move_mode(v, a, mode);      // (a, mode, ..., b)
  move_mode(v, b, mode + 1);  // (a, b, mode, ...)
}

std::array<cplx, 3> receiver_displacements(double lambda_bs, cplx unrotated, cplx plus, cplx minus) {
  const double t3 = std::sqrt(third_port_weight(lambda_bs));
  return {-lambda_bs * plus, -lambda_bs * minus, -t3 * unrotated};
}

void apply_receiver(FockVector& v, std::size_t mode, double lambda_bs, cplx unrotated, cplx plus,
                    cplx minus, std::size_t output_N, Kernel kernel) {
  split_receiver(v, mode, lambda_bs);
  const auto d = receiver_displacements(lambda_bs, unrotated, plus, minus);
  for (std::size_t m = 0; m < 3; ++m) {
    const std::size_t dim = v.dims[v.mode_axis(mode + m)];
    resize_mode(v, mode + m, std::max(output_N, dim - 1));
    apply_displacement(v, mode + m, d[m], kernel);
  }
}

}  // namespace qubus::oracle
