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
#include <cstdint>
#include <string>
#include <vector>

#include "qubus/usd.hpp"

namespace qubus {

/// Trials are cut into fixed-size chunks, each with its own generator seeded
/// from (seed, chunk index), so the counts do not depend on the thread count.
inline constexpr std::uint64_t kTrialsPerChunk = std::uint64_t{1} << 16;

using PatternCounts = std::array<std::uint64_t, 8>;

/// Samples receiver patterns for the link's qubus: the input label is drawn
/// with priors 1/2, 1/4, 1/4, then each detector clicks independently with
/// probability 1 - exp(-|output|^2).
PatternCounts sample_patterns_serial(const LinkParams& params, std::uint64_t trials,
                                     std::uint64_t seed);
/// Same counts as the serial sampler, chunks spread over OpenMP threads.
PatternCounts sample_patterns(const LinkParams& params, std::uint64_t trials, std::uint64_t seed);

struct FrequencyCheck {
  std::string label;
  double analytic = 0.0;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double standard_error = 0.0;  ///< binomial, from the analytic probability
  double z_score = 0.0;         ///< 0 when the analytic value is 0 or 1 and matched exactly
};

struct MonteCarloReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// One row per pattern (index order), then the closed-form aggregates
  /// even, odd_usd, odd_ent and total_usd.
  std::vector<FrequencyCheck> rows;
  double max_abs_z = 0.0;
};

MonteCarloReport monte_carlo_report(const LinkParams& params, std::uint64_t trials,
                                    std::uint64_t seed, bool parallel = true);

}  // namespace qubus
