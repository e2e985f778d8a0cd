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

// qubus: figure tables, Monte-Carlo checks and single-link reports for the
// coherent-state bus entanglement scheme.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cli_support.hpp"

namespace {

using namespace qubus;
using namespace qubus::cli;

struct Options {
  std::string alpha_range;
  std::string distance_range;
  std::string fidelity_range;
  std::optional<double> alpha;
  std::optional<double> fidelity;
  double distance_km = 10.0;
  double theta = 0.01;
  double loss_db_per_km = kDefaultLossDbPerKm;
  std::optional<double> lambda;
  std::string scheme;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 20070101;
  std::string format = "csv";
  std::string out;
  double window = 1.0;
  std::string discriminator = "usd";
  bool ideal = false;
  bool serial = false;
  std::optional<double> assert_z;
};

std::string render(const Table& t, Format f) {
  std::ostringstream os;
  if (f == Format::csv) {
    t.write_csv(os);
  } else {
    os << t.to_json().dump(2) << '\n';
  }
  return os.str();
}

std::string render(const Table& t, const nlohmann::json& j, Format f) {
  if (f == Format::csv) return render(t, f);
  return j.dump(2) + "\n";
}

Execution execution(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

std::vector<double> range_or(const std::string& text, const std::string& fallback) {
  return parse_range(text.empty() ? fallback : text);
}

LinkParams single_link(const Options& o, double default_lambda) {
  LinkParams p;
  p.theta = o.theta;
  p.distance_km = o.distance_km;
  p.loss_db_per_km = o.loss_db_per_km;
  p.lambda_bs = o.lambda.value_or(default_lambda);
  if (o.alpha && o.fidelity) throw std::invalid_argument("give either --alpha or --fidelity, not both");
  if (o.fidelity) {
    p.alpha = alpha_for_fidelity(*o.fidelity, p.eta(), p.theta);
  } else {
    p.alpha = o.alpha.value_or(200.0);
  }
  p.validate();
  return p;
}

std::vector<Fig6Scheme> selected_schemes(const std::string& names) {
  auto all = default_fig6_schemes();
  if (names.empty()) return all;
  std::vector<Fig6Scheme> out;
  std::stringstream ss(names);
  std::string name;
  while (std::getline(ss, name, ',')) {
    bool found = false;
    for (const auto& s : all) {
      if (s.name == name) {
        out.push_back(s);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown scheme '" + name + "' (usd_bound, even, odd, usd)");
  }
  return out;
}

std::string run(const std::string& command, const Options& o) {
  const Format fmt = parse_format(o.format);
  if (command == "fig2") {
    Fig2Config c;
    c.alphas = range_or(o.alpha_range, "0:500:200");
    c.distances_km = range_or(o.distance_range, "1,5,10,20");
    c.theta = o.theta;
    c.loss_db_per_km = o.loss_db_per_km;
    const auto rows = fig2_table(c, execution(o));
    check_table(rows);
    return render(fig2_rows(rows), fmt);
  }
  if (command == "fig4") {
    Fig4Config c;
    c.fidelities = range_or(o.fidelity_range, "0.505:1:100");
    c.distances_km = range_or(o.distance_range, "10,17,20,50,100");
    c.loss_db_per_km = o.loss_db_per_km;
    const auto rows = fig4_table(c, execution(o));
    check_table(rows);
    return render(fig4_rows(rows), fmt);
  }
  if (command == "fig6") {
    Fig6Config c;
    c.fidelities = range_or(o.fidelity_range, "0.505:1:100");
    c.distances_km = range_or(o.distance_range, "10,20,30,50,100");
    c.theta = o.theta;
    c.loss_db_per_km = o.loss_db_per_km;
    c.schemes = selected_schemes(o.scheme);
    const auto rows = fig6_table(c, execution(o));
    check_table(rows);
    return render(fig6_rows(rows), fmt);
  }
  if (command == "montecarlo") {
    if (o.trials < 1) throw std::invalid_argument("--trials must be at least 1");
    const LinkParams p = single_link(o, 0.4);
    const MonteCarloReport r = monte_carlo_report(p, o.trials, o.seed, !o.serial);
    if (o.assert_z && !(r.max_abs_z <= *o.assert_z)) {
      throw NumericAssertionError("max |z| = " + format_number(r.max_abs_z) + " exceeds " +
                                  format_number(*o.assert_z));
    }
    return render(montecarlo_rows(r), montecarlo_json(r), fmt);
  }
  if (command == "link") {
    const LinkReport r = link_report(single_link(o, 0.7), o.window);
    return render(link_rows(r), link_json(r), fmt);
  }
  if (command == "swap") {
    Discriminator d;
    if (o.discriminator == "usd") {
      d = Discriminator::usd_unrotated;
    } else if (o.discriminator == "homodyne") {
      d = Discriminator::p_homodyne;
    } else {
      throw std::invalid_argument("discriminator must be usd or homodyne");
    }
    const SwapReport r = swap_report(single_link(o, 0.7), d, o.ideal, o.window, o.trials, o.seed);
    return render(swap_rows(r), swap_json(r), fmt);
  }
  throw std::invalid_argument("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state bus entanglement: figure tables, receiver statistics, link reports"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file; command-line flags override it");
  // Grids like "0.6,0.8" must reach parse_range whole, not as a config array.
  auto ini = std::make_shared<CLI::ConfigINI>();
  ini->arrayDelimiter('\x1f');
  app.config_formatter(ini);

  Options o;
  app.add_option("--alpha-range", o.alpha_range, "alpha grid, start:stop:count or a,b,c");
  app.add_option("--distance-range", o.distance_range, "distance grid in km");
  app.add_option("--fidelity-range", o.fidelity_range, "target fidelity grid");
  app.add_option("--alpha", o.alpha, "probe amplitude for single-point commands");
  app.add_option("--fidelity", o.fidelity, "solve alpha for this fidelity instead of --alpha");
  app.add_option("--distance", o.distance_km, "link distance in km")->capture_default_str();
  app.add_option("--theta", o.theta, "controlled rotation angle, radians")->capture_default_str();
  app.add_option("--loss-db-per-km", o.loss_db_per_km, "fiber loss")->capture_default_str();
  app.add_option("--lambda", o.lambda, "receiver splitting parameter in [0, 1/sqrt2]");
  app.add_option("--scheme", o.scheme, "fig6 schemes: comma list of usd_bound,even,odd,usd");
  app.add_option("--trials", o.trials, "Monte-Carlo trials / sampled swaps")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--format", o.format, "csv or json")->capture_default_str();
  app.add_option("--out", o.out, "output file (stdout when omitted)");
  app.add_option("--window", o.window, "homodyne acceptance half-width")->capture_default_str();
  app.add_option("--discriminator", o.discriminator, "swap qubus readout: usd or homodyne")
      ->capture_default_str();
  app.add_flag("--ideal", o.ideal, "swap: resolve the second Bell pair by photon-number parity");
  app.add_flag("--serial", o.serial, "use the serial reference paths");
  app.add_option("--assert-z", o.assert_z, "montecarlo: exit 3 when any |z| exceeds this");

  for (const char* name : {"fig2", "fig4", "fig6", "montecarlo", "link", "swap"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("fig2")->description("EoF of the qubit-qubus state vs alpha per distance");
  app.get_subcommand("fig4")->description("optimal USD failure vs fidelity per distance");
  app.get_subcommand("fig6")->description("receiver failure probabilities vs fidelity");
  app.get_subcommand("montecarlo")->description("sampled receiver patterns vs closed forms");
  app.get_subcommand("link")->description("single-link report");
  app.get_subcommand("swap")->description("two-link hybrid swap report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::string text;
  try {
    text = run(command, o);
  } catch (const NumericAssertionError& e) {
    std::cerr << "qubus " << command << ": numeric assertion failed: " << e.what() << '\n';
    return kExitNumericAssertion;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qubus " << command << ": invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "qubus " << command << ": invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "qubus " << command << ": " << e.what() << '\n';
    return kExitNumericAssertion;
  }
  try {
    emit(o.out, text);
  } catch (const std::exception& e) {
    std::cerr << "qubus " << command << ": " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
