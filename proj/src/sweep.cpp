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

#include "qubus/sweep.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qubus {
namespace {

void require_probability(double p, const char* what, std::size_t row) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    std::ostringstream os;
    os << what << " out of [0, 1] at row " << row << ": " << p;
    throw NumericAssertionError(os.str());
  }
}

void require_finite(double v, const char* what, std::size_t row) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << what << " is not finite at row " << row;
    throw NumericAssertionError(os.str());
  }
}

void require_nonempty(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " grid is empty");
}

LinkParams with_distance(double alpha, double theta, double distance_km, double loss,
                         double lambda) {
  LinkParams p;
  p.alpha = alpha;
  p.theta = theta;
  p.distance_km = distance_km;
  p.loss_db_per_km = loss;
  p.lambda_bs = lambda;
  p.validate();
  return p;
}

double fig6_failure(const Fig6Scheme& s, double fidelity, double distance_km, double theta,
                    double loss) {
  const double eta = transmission_for_distance(distance_km, loss);
  if (s.kind == Fig6Scheme::Kind::usd_bound) return usd_failure_bound_from_fidelity(fidelity, eta);
  const double alpha = alpha_for_fidelity(fidelity, eta, theta);
  const UsdBudget b = pattern_probabilities(with_distance(alpha, theta, distance_km, loss, s.lambda_bs));
  switch (s.kind) {
    case Fig6Scheme::Kind::even: return 1.0 - b.p_even;
    case Fig6Scheme::Kind::odd: return 1.0 - b.p_odd_ent;
    case Fig6Scheme::Kind::usd: return 1.0 - b.p_total_usd;
    case Fig6Scheme::Kind::usd_bound: break;
  }
  return 1.0;
}

}  // namespace

std::vector<Fig2Row> fig2_table(const Fig2Config& cfg, Execution exec) {
  require_nonempty(cfg.alphas, "alpha");
  require_nonempty(cfg.distances_km, "distance");
  const std::size_t na = cfg.alphas.size();
  for (double d : cfg.distances_km) with_distance(0.0, cfg.theta, d, cfg.loss_db_per_km, 0.0);
  for (double a : cfg.alphas) with_distance(a, cfg.theta, 0.0, cfg.loss_db_per_km, 0.0);
  return map_grid<Fig2Row>(exec, na * cfg.distances_km.size(), [&](std::size_t i) {
    const double d = cfg.distances_km[i / na];
    const double a = cfg.alphas[i % na];
    return Fig2Row{a, d, qubit_qubus_eof(with_distance(a, cfg.theta, d, cfg.loss_db_per_km, 0.0))};
  });
}

std::vector<Fig4Row> fig4_table(const Fig4Config& cfg, Execution exec) {
  require_nonempty(cfg.fidelities, "fidelity");
  require_nonempty(cfg.distances_km, "distance");
  const std::size_t nf = cfg.fidelities.size();
  return map_grid<Fig4Row>(exec, nf * cfg.distances_km.size(), [&](std::size_t i) {
    const double d = cfg.distances_km[i / nf];
    const double f = cfg.fidelities[i % nf];
    const double eta = transmission_for_distance(d, cfg.loss_db_per_km);
    return Fig4Row{f, d, usd_failure_bound_from_fidelity(f, eta)};
  });
}

std::vector<Fig6Scheme> default_fig6_schemes() {
  return {
      {"usd_bound", Fig6Scheme::Kind::usd_bound, 0.0},
      {"even", Fig6Scheme::Kind::even, 0.7},
      {"odd", Fig6Scheme::Kind::odd, 0.01},
      {"usd", Fig6Scheme::Kind::usd, 0.4},
  };
}

std::vector<Fig6Row> fig6_table(const Fig6Config& cfg, Execution exec) {
  require_nonempty(cfg.fidelities, "fidelity");
  require_nonempty(cfg.distances_km, "distance");
  if (cfg.schemes.empty()) throw std::invalid_argument("no schemes selected");
  const std::size_t ns = cfg.schemes.size();
  const std::size_t nf = cfg.fidelities.size();
  return map_grid<Fig6Row>(exec, ns * nf * cfg.distances_km.size(), [&](std::size_t i) {
    const double d = cfg.distances_km[i / (ns * nf)];
    const double f = cfg.fidelities[(i / ns) % nf];
    const Fig6Scheme& s = cfg.schemes[i % ns];
    return Fig6Row{f, d, s.name, fig6_failure(s, f, d, cfg.theta, cfg.loss_db_per_km)};
  });
}

LinkReport link_report(const LinkParams& params, double homodyne_halfwidth) {
  params.validate();
  LinkReport r;
  r.params = params;
  r.eta = params.eta();
  r.quantities = link_quantities(params);
  r.optimal_failure = usd_optimal_failure(params);
  r.budget = pattern_probabilities(params);
  r.qubit_qubus_eof = qubit_qubus_eof(params);
  r.patterns = pattern_distribution(params);
  for (auto s : {LinkScheme::even, LinkScheme::odd_ent, LinkScheme::total_usd, LinkScheme::homodyne}) {
    SchemeReport sr;
    sr.scheme = s;
    try {
      sr.stats = link_attempt_statistics(params, s, homodyne_halfwidth);
    } catch (const std::domain_error& e) {
      sr.error = e.what();
    }
    r.schemes.push_back(std::move(sr));
  }
  return r;
}

SwapReport swap_report(const LinkParams& params, Discriminator d, bool ideal_number_resolving,
                       double homodyne_halfwidth, std::uint64_t trials, std::uint64_t seed) {
  params.validate();
  const HybridState link = qubit_qubus_state(params);
  BellMeasurement cfg = BellMeasurement::for_link(params, d, homodyne_halfwidth);
  cfg.ideal_number_resolving = ideal_number_resolving;
  const CoherentLabel base = cfg.unrotated;

  SwapReport r;
  r.params = params;
  r.discriminator = d;
  r.ideal_number_resolving = ideal_number_resolving;
  r.input_fidelity = best_hybrid_bell_fidelity(link, base, params.theta).second;
  r.input_concurrence = hybrid_concurrence(link);

  const SwapAnalysis a = analyze_swap(link, link, cfg, base);
  r.success_probability = a.success_probability;
  for (const auto& b : a.branches) {
    r.branches.push_back({b.measurement.qubit_bit, b.measurement.identified,
                          b.measurement.probability, b.best_match, b.bell_fidelity,
                          hybrid_concurrence(b.heralded)});
  }

  // Sampling reuses the branch table; it only draws which branch fires.
  r.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (u(rng) < a.success_probability) ++r.sampled_successes;
  }
  return r;
}

void check_table(const std::vector<Fig2Row>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_finite(rows[i].alpha, "alpha", i);
    require_probability(rows[i].eof, "entanglement of formation", i);
  }
}

void check_table(const std::vector<Fig4Row>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_finite(rows[i].fidelity, "fidelity", i);
    require_probability(rows[i].optimal_failure, "optimal failure", i);
  }
}

void check_table(const std::vector<Fig6Row>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_finite(rows[i].fidelity, "fidelity", i);
    require_probability(rows[i].failure_probability, "failure probability", i);
  }
}

}  // namespace qubus
