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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qubus/sweep.hpp"

namespace qubus::cli {

/// Exit codes of the qubus tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericAssertion = 3;

/// "a:b:n" (n evenly spaced points, both ends included) or "x,y,z".
/// Throws std::invalid_argument on malformed or empty input.
std::vector<double> parse_range(const std::string& text);

enum class Format { csv, json };
Format parse_format(const std::string& text);

/// Fixed-column text table; numbers are written with %.12g.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add_row(std::vector<nlohmann::json> cells);
  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::json>> rows_;
};

std::string format_number(double v);

Table fig2_rows(const std::vector<Fig2Row>& rows);
Table fig4_rows(const std::vector<Fig4Row>& rows);
Table fig6_rows(const std::vector<Fig6Row>& rows);
Table montecarlo_rows(const MonteCarloReport& report);
/// quantity,value pairs.
Table link_rows(const LinkReport& report);
Table swap_rows(const SwapReport& report);

nlohmann::json link_json(const LinkReport& report);
nlohmann::json swap_json(const SwapReport& report);
nlohmann::json montecarlo_json(const MonteCarloReport& report);

/// Writes to `path`, or stdout for "" or "-". Throws std::runtime_error naming
/// the path when the file cannot be written.
void emit(const std::string& path, const std::string& text);

}  // namespace qubus::cli
