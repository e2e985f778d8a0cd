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

#include "qubus/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qubus {

CoherentLabel::CoherentLabel(cplx amplitude) : amplitude_(amplitude) {
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
    throw std::invalid_argument("coherent label must be finite");
  }
}

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  // exp(x)cos(y) - 1 = expm1(x)cos(y) + (cos(y) - 1)
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

cplx cosh_minus_one(cplx z) {
  const cplx s = std::sinh(0.5 * z);
  return 2.0 * s * s;
}

cplx coherent_overlap(CoherentLabel beta1, CoherentLabel beta2) {
  const cplx b1 = beta1.value();
  const cplx b2 = beta2.value();
  const double damping = -0.5 * std::norm(b1 - b2);
  const double phase = std::imag(std::conj(b1) * b2);
  return std::exp(damping) * std::polar(1.0, phase);
}

cplx vacuum_projection(CoherentLabel bra, CoherentLabel ket) {
  return {std::exp(-0.5 * (bra.mean_photons() + ket.mean_photons())), 0.0};
}

bool labels_close(CoherentLabel a, CoherentLabel b, double rel_tol) {
  const double scale = std::max({1.0, std::abs(a.value()), std::abs(b.value())});
  return std::abs(a.value() - b.value()) <= rel_tol * scale;
}

}  // namespace qubus
