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

#include "qubus/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qubus {
namespace {

struct ClickTable {
  // Detector click probabilities for the unrotated, +theta and -theta inputs.
  std::array<std::array<double, 3>, 3> click{};
};

ClickTable click_table(const LinkParams& params) {
  const NominalLabels n = nominal_labels(params);
  ClickTable t;
  const std::array<CoherentLabel, 3> inputs{n.unrotated, n.plus, n.minus};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto out = receiver_transform(inputs[s], params);
    for (std::size_t m = 0; m < 3; ++m) t.click[s][m] = -std::expm1(-out[m].mean_photons());
  }
  return t;
}

std::mt19937_64 chunk_generator(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

void sample_chunk(const ClickTable& table, std::uint64_t trials, std::uint64_t seed,
                  std::uint64_t chunk, PatternCounts& counts) {
  std::mt19937_64 rng = chunk_generator(seed, chunk);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double r = u(rng);
    const std::size_t state = r < 0.5 ? 0 : (r < 0.75 ? 1 : 2);
    int index = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      if (u(rng) < table.click[state][m]) index |= 1 << m;
    }
    ++counts[static_cast<std::size_t>(index)];
  }
}

std::uint64_t chunk_count(std::uint64_t trials) {
  return (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

std::uint64_t chunk_trials(std::uint64_t trials, std::uint64_t chunk) {
  return std::min(kTrialsPerChunk, trials - chunk * kTrialsPerChunk);
}

FrequencyCheck check(std::string label, double analytic, std::uint64_t count,
                     std::uint64_t trials) {
  FrequencyCheck c;
  c.label = std::move(label);
  c.analytic = analytic;
  c.count = count;
  c.frequency = static_cast<double>(count) / static_cast<double>(trials);
  c.standard_error = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
  const double diff = c.frequency - analytic;
  if (c.standard_error > 0.0) {
    c.z_score = diff / c.standard_error;
  } else {
    c.z_score = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  }
  return c;
}

}  // namespace

PatternCounts sample_patterns_serial(const LinkParams& params, std::uint64_t trials,
                                     std::uint64_t seed) {
  const ClickTable table = click_table(params);
  PatternCounts counts{};
  for (std::uint64_t c = 0; c < chunk_count(trials); ++c) {
    sample_chunk(table, chunk_trials(trials, c), seed, c, counts);
  }
  return counts;
}

PatternCounts sample_patterns(const LinkParams& params, std::uint64_t trials, std::uint64_t seed) {
  const ClickTable table = click_table(params);
  const auto chunks = static_cast<std::int64_t>(chunk_count(trials));
  std::vector<PatternCounts> partial(static_cast<std::size_t>(chunks), PatternCounts{});
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    sample_chunk(table, chunk_trials(trials, uc), seed, uc, partial[static_cast<std::size_t>(c)]);
  }
  PatternCounts counts{};
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < 8; ++i) counts[i] += p[i];
  }
  return counts;
}

MonteCarloReport monte_carlo_report(const LinkParams& params, std::uint64_t trials,
                                    std::uint64_t seed, bool parallel) {
  params.validate();
  if (trials == 0) throw std::invalid_argument("trial count must be at least 1");
  const PatternCounts counts =
      parallel ? sample_patterns(params, trials, seed) : sample_patterns_serial(params, trials, seed);
  const auto dist = pattern_distribution(params);
  const UsdBudget budget = pattern_probabilities(params);

  MonteCarloReport r;
  r.trials = trials;
  r.seed = seed;
  for (int i = 0; i < 8; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.rows.push_back(check(DetectionPattern::from_index(i).to_string(), dist[k], counts[k], trials));
  }
  // CCN heralds the even state, NNC the odd one; any mode-3 click without a
  // double click (NNC, CNC, NCC) identifies the rotated pair.
  const std::uint64_t even = counts[3];
  const std::uint64_t odd_ent = counts[4];
  const std::uint64_t odd_usd = counts[4] + counts[5] + counts[6];
  r.rows.push_back(check("even", budget.p_even, even, trials));
  r.rows.push_back(check("odd_usd", budget.p_odd_usd, odd_usd, trials));
  r.rows.push_back(check("odd_ent", budget.p_odd_ent, odd_ent, trials));
  r.rows.push_back(check("total_usd", budget.p_total_usd, even + odd_usd, trials));
  for (const auto& row : r.rows) r.max_abs_z = std::max(r.max_abs_z, std::abs(row.z_score));
  return r;
}

}  // namespace qubus
