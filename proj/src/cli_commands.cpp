// Copyright 2026 The qtoken Authors
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

#include "qtoken/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "qtoken/harness/experiment.hpp"

namespace qtoken::cli {

namespace {

bool write_file(const std::string& path, const std::string& body, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << body;
  f.flush();
  if (!f) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int cmd_run(const RunConfiguration& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const noise::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  harness::SecurityReport report;
  report.exact_p = harness::exact_acceptance(config.protocol);
  report.mc = harness::run_mc(config.protocol, config.trials, config.seed, {config.threads, !config.out.empty()});
  report.analytic_p = analytics::predicted_acceptance(config.protocol);
  report.metrics = analytics::security_metrics(report.analytic_p, config.forge_rounds);

  if (!config.out.empty()) {
    std::ostringstream body;
    if (config.format == Format::csv) {
      body << protocol::transcript_csv_header() << '\n';
    }
    for (const auto& t : report.mc.transcripts) {
      if (!t.failed) {
        body << (config.format == Format::csv ? protocol::to_csv_row(t) : protocol::to_json_line(t)) << '\n';
      }
    }
    if (!write_file(config.out, body.str(), err)) {
      return kConfigError;
    }
  }

  if (config.format == Format::json) {
    out << harness::to_json(report) << '\n';
  } else {
    harness::write_text(out, report);
  }
  if (report.mc.failed > 0) {
    err << "error: " << report.mc.failed << " of " << report.mc.trials << " trials exhausted max_repetitions = "
        << config.protocol.noise.max_repetitions << '\n';
    return kBudgetExhausted;
  }
  return kOk;
}

int cmd_sweep(const RunConfiguration& config, std::ostream& out, std::ostream& err) {
  harness::SweepSpec spec;
  spec.parameter = config.sweep_parameter;
  spec.values = config.sweep_values;
  spec.trials = config.trials;
  spec.seed = config.seed;
  spec.forge_rounds = config.forge_rounds;
  try {
    config.validate();
    spec.validate();
    for (double v : spec.values) {
      (void)harness::with_parameter(config.protocol, spec.parameter, v);
    }
  } catch (const noise::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  const std::string path = config.out.empty() ? "sweep." + to_string(config.format) : config.out;
  // Fail on an unwritable path before spending time on the sweep.
  {
    std::ofstream probe(path, std::ios::app);
    if (!probe) {
      err << "error: cannot open '" << path << "' for writing\n";
      return kConfigError;
    }
  }

  const auto rows = harness::sweep(spec, config.protocol, config.threads);
  std::ostringstream table;
  if (config.format == Format::csv) {
    harness::write_sweep_csv(table, rows);
  } else {
    harness::write_sweep_json(table, spec, rows);
  }
  std::ostringstream plot;
  harness::write_plot_data(plot, spec, config.protocol, rows);
  if (!write_file(path, table.str(), err) || !write_file(path + ".plot.dat", plot.str(), err)) {
    return kConfigError;
  }
  out << "wrote " << rows.size() << " rows to " << path << " and " << path << ".plot.dat\n";
  return kOk;
}

int cmd_forge(const RunConfiguration& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const noise::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  const auto strategy = adversary::make_strategy(config.forge_strategy);
  const auto report = adversary::run_forgery_experiment(*strategy, config.protocol, config.forge_rounds,
                                                        config.trials, config.seed, 0.01, config.threads);
  if (config.format == Format::json) {
    out << harness::to_json(report) << '\n';
  } else {
    harness::write_text(out, report);
  }
  return kOk;
}

int cmd_selftest(const harness::SelftestOptions& options, std::ostream& out, std::ostream& err) {
  const auto checks = harness::run_selftest(options);
  if (harness::print_checks(out, checks)) {
    return kOk;
  }
  err << "selftest failed:";
  for (const auto& c : checks) {
    if (!c.passed) {
      err << ' ' << c.name << ';';
    }
  }
  err << '\n';
  return kCheckFailed;
}

}  // namespace qtoken::cli
