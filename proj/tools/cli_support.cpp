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

#include "cli_support.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace qubus::cli {
namespace {

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string cell_text(const nlohmann::json& c) {
  if (c.is_number()) return format_number(c.get<double>());
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_string()) return c.get<std::string>();
  return c.dump();
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty range");
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:count, got '" + t + "'");
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const double n = parse_double(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n)) throw std::invalid_argument("range count must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) out.back() = b;
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(t, ',')) {
    if (p.empty()) throw std::invalid_argument("empty entry in list '" + t + "'");
    out.push_back(parse_double(p));
  }
  return out;
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw std::invalid_argument("format must be csv or json, got '" + text + "'");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::add_row(std::vector<nlohmann::json> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match header");
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

nlohmann::json Table::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

Table fig2_rows(const std::vector<Fig2Row>& rows) {
  Table t({"alpha", "distance_km", "eof"});
  for (const auto& r : rows) t.add_row({r.alpha, r.distance_km, r.eof});
  return t;
}

Table fig4_rows(const std::vector<Fig4Row>& rows) {
  Table t({"F", "distance_km", "optimal_failure"});
  for (const auto& r : rows) t.add_row({r.fidelity, r.distance_km, r.optimal_failure});
  return t;
}

Table fig6_rows(const std::vector<Fig6Row>& rows) {
  Table t({"F", "distance_km", "scheme", "failure_probability"});
  for (const auto& r : rows) t.add_row({r.fidelity, r.distance_km, r.scheme, r.failure_probability});
  return t;
}

Table montecarlo_rows(const MonteCarloReport& report) {
  Table t({"outcome", "analytic", "count", "frequency", "standard_error", "z_score"});
  for (const auto& r : report.rows) {
    t.add_row({r.label, r.analytic, r.count, r.frequency, r.standard_error, r.z_score});
  }
  return t;
}

nlohmann::json montecarlo_json(const MonteCarloReport& report) {
  return {{"trials", report.trials},
          {"seed", report.seed},
          {"max_abs_z", report.max_abs_z},
          {"rows", montecarlo_rows(report).to_json()}};
}

nlohmann::json link_json(const LinkReport& r) {
  nlohmann::json j;
  j["alpha"] = r.params.alpha;
  j["theta"] = r.params.theta;
  j["distance_km"] = r.params.distance_km;
  j["loss_db_per_km"] = r.params.loss_db_per_km;
  j["lambda"] = r.params.lambda_bs;
  j["eta"] = r.eta;
  j["mu_B"] = r.quantities.mu_B;
  j["nu_B"] = r.quantities.nu_B;
  j["mu_E"] = r.quantities.mu_E;
  j["nu_E"] = r.quantities.nu_E;
  j["F"] = r.quantities.fidelity_F;
  j["xi"] = r.quantities.xi;
  j["usd_optimal_failure"] = r.optimal_failure;
  j["qubit_qubus_eof"] = r.qubit_qubus_eof;
  j["p_even"] = r.budget.p_even;
  j["p_odd_usd"] = r.budget.p_odd_usd;
  j["p_odd_ent"] = r.budget.p_odd_ent;
  j["p_total_usd"] = r.budget.p_total_usd;
  j["p_total_ent"] = r.budget.p_total_ent;
  nlohmann::json patterns = nlohmann::json::object();
  for (int i = 0; i < 8; ++i) {
    patterns[DetectionPattern::from_index(i).to_string()] = r.patterns[static_cast<std::size_t>(i)];
  }
  j["patterns"] = patterns;
  nlohmann::json schemes = nlohmann::json::object();
  for (const auto& s : r.schemes) {
    nlohmann::json e;
    if (s.stats) {
      e["success_probability"] = s.stats->success_probability;
      e["expected_attempts"] = s.stats->expected_attempts;
      e["fidelity"] = s.stats->fidelity;
    } else {
      e["error"] = s.error;
    }
    schemes[std::string(to_string(s.scheme))] = e;
  }
  j["schemes"] = schemes;
  return j;
}

Table link_rows(const LinkReport& report) {
  Table t({"quantity", "value"});
  const nlohmann::json j = link_json(report);
  for (const auto& [key, value] : j.items()) {
    if (key == "patterns") {
      for (const auto& [p, v] : value.items()) t.add_row({"pattern_" + p, v});
    } else if (key == "schemes") {
      for (const auto& [s, e] : value.items()) {
        for (const auto& [field, v] : e.items()) t.add_row({s + "_" + field, v});
      }
    } else {
      t.add_row({key, value});
    }
  }
  return t;
}

Table swap_rows(const SwapReport& report) {
  Table t({"qubit_bit", "identified", "probability", "best_match", "bell_fidelity", "concurrence"});
  for (const auto& b : report.branches) {
    t.add_row({b.qubit_bit, std::string(to_string(b.identified)), b.probability,
               std::string(to_string(b.best_match)), b.bell_fidelity, b.concurrence});
  }
  return t;
}

nlohmann::json swap_json(const SwapReport& r) {
  return {{"alpha", r.params.alpha},
          {"theta", r.params.theta},
          {"distance_km", r.params.distance_km},
          {"lambda", r.params.lambda_bs},
          {"discriminator", std::string(to_string(r.discriminator))},
          {"ideal_number_resolving", r.ideal_number_resolving},
          {"input_fidelity", r.input_fidelity},
          {"input_concurrence", r.input_concurrence},
          {"success_probability", r.success_probability},
          {"trials", r.trials},
          {"sampled_successes", r.sampled_successes},
          {"branches", swap_rows(r).to_json()}};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  f << text;
  f.close();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qubus::cli
