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

#include <cmath>
#include <cstddef>

#include <boost/math/quadrature/gauss.hpp>

namespace qubus {

/// Composite 20-point Gauss-Legendre over [lo, hi] split into equal panels.
/// Works for any callable returning a real or complex value.
template <class F>
auto integrate_panels(F&& f, double lo, double hi, std::size_t panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  using result_t = decltype(f(lo));
  result_t total{};
  if (!(hi > lo) || panels == 0) return total;
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = lo + width * static_cast<double>(i);
    const double b = (i + 1 == panels) ? hi : a + width;
    total += rule::integrate(f, a, b);
  }
  return total;
}

}  // namespace qubus
