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

// qtoken: run, sweep, forge and selftest for the quantum token simulator.
//
// Exit codes: 0 ok, 1 selftest failure, 2 configuration or I/O error,
// 3 photon repetition budget exhausted.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtoken/cli/commands.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "key = value configuration file");
  sub->add_option("--trials", o.trials, "trials (per sweep point)");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--out", o.out, "output path");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

qtoken::cli::RunConfiguration resolve(const Overrides& o) {
  auto c = o.config_path.empty() ? qtoken::cli::RunConfiguration{} : qtoken::cli::load_config(o.config_path);
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out = *o.out;
  if (o.format) c.format = qtoken::cli::parse_format(*o.format);
  if (o.threads) c.threads = *o.threads;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum token protocol simulator"};
  app.require_subcommand(1);

  Overrides o;
  auto* run = app.add_subcommand("run", "single-point experiment and security report");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep table plus plot data");
  auto* forge = app.add_subcommand("forge", "forgery experiment against the configured strategy");
  auto* selftest = app.add_subcommand("selftest", "invariant suite, exit 0 iff all checks pass");
  for (auto* sub : {run, sweep, forge}) {
    add_common(sub, o);
  }
  bool corrupt = false;
  selftest->add_flag("--corrupt-bell-labels", corrupt)->group("");  // negative-control hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qtoken::cli::kConfigError;
  }

  if (selftest->parsed()) {
    qtoken::harness::SelftestOptions opt;
    opt.corrupt_bell_labels = corrupt;
    return qtoken::cli::cmd_selftest(opt, std::cout, std::cerr);
  }

  qtoken::cli::RunConfiguration config;
  try {
    config = resolve(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qtoken::cli::kConfigError;
  }
  try {
    if (run->parsed()) return qtoken::cli::cmd_run(config, std::cout, std::cerr);
    if (sweep->parsed()) return qtoken::cli::cmd_sweep(config, std::cout, std::cerr);
    return qtoken::cli::cmd_forge(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qtoken::cli::kConfigError;
  }
}
