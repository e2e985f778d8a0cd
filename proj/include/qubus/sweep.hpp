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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubus/entanglement.hpp"
#include "qubus/montecarlo.hpp"
#include "qubus/parallel.hpp"
#include "qubus/swapping.hpp"
#include "qubus/usd.hpp"

namespace qubus {

/// A table cell that is not finite or a probability outside [0, 1].
class NumericAssertionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fig2Row {
  double alpha = 0.0;
  double distance_km = 0.0;
  double eof = 0.0;
};

struct Fig2Config {
  std::vector<double> alphas;
  std::vector<double> distances_km;
  double theta = 0.01;
  double loss_db_per_km = kDefaultLossDbPerKm;
};

/// EoF of the qubit-qubus state; rows ordered distance-major, then alpha.
std::vector<Fig2Row> fig2_table(const Fig2Config& cfg, Execution exec = Execution::parallel);

struct Fig4Row {
  double fidelity = 0.0;
  double distance_km = 0.0;
  double optimal_failure = 0.0;
};

struct Fig4Config {
  std::vector<double> fidelities;
  std::vector<double> distances_km;
  double loss_db_per_km = kDefaultLossDbPerKm;
};

std::vector<Fig4Row> fig4_table(const Fig4Config& cfg, Execution exec = Execution::parallel);

struct Fig6Scheme {
  enum class Kind { usd_bound, even, odd, usd };
  std::string name;
  Kind kind = Kind::usd_bound;
  double lambda_bs = 0.0;
};

/// usd_bound, even (lambda 0.7), odd (lambda 0.01), usd (lambda 0.4).
std::vector<Fig6Scheme> default_fig6_schemes();

struct Fig6Row {
  double fidelity = 0.0;
  double distance_km = 0.0;
  std::string scheme;
  double failure_probability = 0.0;
};

struct Fig6Config {
  std::vector<double> fidelities;
  std::vector<double> distances_km;
  double theta = 0.01;
  double loss_db_per_km = kDefaultLossDbPerKm;
  std::vector<Fig6Scheme> schemes = default_fig6_schemes();
};

/// alpha from the fidelity inversion, then 1 - P^even, 1 - P^odd,ent and
/// 1 - P^total,USD for the scheme lambdas, next to the quantum bound.
/// Rows ordered distance, fidelity, scheme.
std::vector<Fig6Row> fig6_table(const Fig6Config& cfg, Execution exec = Execution::parallel);

struct SchemeReport {
  LinkScheme scheme = LinkScheme::even;
  std::optional<LinkStatistics> stats;
  std::string error;  ///< set when the scheme cannot herald at these parameters
};

/// Everything computable for one elementary link.
struct LinkReport {
  LinkParams params;
  double eta = 1.0;
  LinkQuantities quantities;
  double optimal_failure = 1.0;
  UsdBudget budget;
  double qubit_qubus_eof = 0.0;
  std::array<double, 8> patterns{};
  std::vector<SchemeReport> schemes;
};

LinkReport link_report(const LinkParams& params, double homodyne_halfwidth = 1.0);

struct SwapRow {
  int qubit_bit = 0;
  HybridBell identified = HybridBell::pair1_plus;
  double probability = 0.0;
  HybridBell best_match = HybridBell::pair1_plus;
  double bell_fidelity = 0.0;
  double concurrence = 0.0;
};

/// Two identical links swapped at the middle station.
struct SwapReport {
  LinkParams params;
  Discriminator discriminator = Discriminator::usd_unrotated;
  bool ideal_number_resolving = false;
  double input_fidelity = 0.0;
  double input_concurrence = 0.0;
  double success_probability = 0.0;
  std::vector<SwapRow> branches;
  std::uint64_t trials = 0;
  std::uint64_t sampled_successes = 0;
};

SwapReport swap_report(const LinkParams& params, Discriminator d, bool ideal_number_resolving,
                       double homodyne_halfwidth, std::uint64_t trials, std::uint64_t seed);

/// Throws NumericAssertionError unless every cell is finite and every
/// probability lies in [0, 1].
void check_table(const std::vector<Fig2Row>& rows);
void check_table(const std::vector<Fig4Row>& rows);
void check_table(const std::vector<Fig6Row>& rows);

}  // namespace qubus
