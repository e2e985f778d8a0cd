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

#include <complex>

namespace qubus {

using cplx = std::complex<double>;

/// Complex amplitude of a single-mode coherent state |beta>.
class CoherentLabel {
 public:
  constexpr CoherentLabel() = default;
  /// Throws std::invalid_argument on NaN or infinite components.
  explicit CoherentLabel(cplx amplitude);
  CoherentLabel(double re, double im = 0.0) : CoherentLabel(cplx(re, im)) {}

  constexpr cplx value() const { return amplitude_; }
  double mean_photons() const { return std::norm(amplitude_); }

  friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;

 private:
  cplx amplitude_{0.0, 0.0};
};

/// exp(z) - 1 without cancellation for small |z|.
cplx expm1(cplx z);

/// 2 sinh^2(z/2) = cosh(z) - 1, stable near z = 0.
cplx cosh_minus_one(cplx z);

/// <beta1|beta2>, evaluated as exp(-|b1-b2|^2/2 + i Im(conj(b1) b2)) so that
/// bright, nearly equal labels keep full relative precision.
cplx coherent_overlap(CoherentLabel beta1, CoherentLabel beta2);

/// <bra|0><0|ket>.
cplx vacuum_projection(CoherentLabel bra, CoherentLabel ket);

/// Labels equal up to a few ulps of their magnitude.
bool labels_close(CoherentLabel a, CoherentLabel b, double rel_tol = 1e-14);

}  // namespace qubus
