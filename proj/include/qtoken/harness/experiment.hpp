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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtoken/adversary/adversary.hpp"
#include "qtoken/analytics/analytics.hpp"
#include "qtoken/harness/stats.hpp"
#include "qtoken/protocol/config.hpp"
#include "qtoken/protocol/transcript.hpp"

namespace qtoken::harness {

/// Honest acceptance probability without sampling. Fixed alpha: one density-matrix
/// evaluation. Uniform alpha: that evaluation integrated over alpha in [0, 1].
/// A random bank phase is averaged exactly when the result depends on it.
double exact_acceptance(const protocol::ProtocolConfig& config);

struct McOptions {
  int threads = 1;
  bool keep_transcripts = false;
};

struct McResult {
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;  // trials that reached verification
  std::uint64_t accepted = 0;
  std::uint64_t failed = 0;     // photon-loss budget exhausted
  double estimate = 0.0;        // accepted / completed
  Interval ci{};                // Wilson 95%
  std::vector<protocol::Transcript> transcripts;  // index order, when kept
};

/// Trial i draws from make_stream(seed, i), so results do not depend on `threads`.
McResult run_mc(const protocol::ProtocolConfig& config, std::uint64_t n_trials, std::uint64_t seed,
                const McOptions& options = {});

/// Names accepted by with_parameter: alpha, sigma_theta, delta_phi, t_s, t_m, f_bsm,
/// p_loss, max_repetitions.
const std::vector<std::string>& sweep_parameters();
protocol::ProtocolConfig with_parameter(protocol::ProtocolConfig config, const std::string& name, double value);

struct SweepSpec {
  std::string parameter = "t_s";
  std::vector<double> values;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  int forge_rounds = 1;

  void validate() const;
};

struct SweepRow {
  double parameter_value = 0.0;
  double exact_p = 0.0;
  double mc_p = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double analytic_p = 0.0;
  double soundness = 0.0;
  double forge_n = 0.0;
};

/// One row per grid value; every point reuses the sweep seed, so a one-point
/// grid reproduces run_mc exactly.
std::vector<SweepRow> sweep(const SweepSpec& spec, const protocol::ProtocolConfig& config, int threads = 1);

std::string sweep_csv_header();
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_sweep_json(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// Two columns: x (t_s / t_m for storage sweeps, the raw value otherwise) and mc_p.
void write_plot_data(std::ostream& os, const SweepSpec& spec, const protocol::ProtocolConfig& config,
                     const std::vector<SweepRow>& rows);

struct SecurityReport {
  double exact_p = 0.0;
  McResult mc;
  double analytic_p = 0.0;
  analytics::SecurityMetrics metrics;
  /// Conventional soundness: acceptance of the best implemented memory-less forger.
  std::optional<adversary::ForgeryReport> forgery;
};

/// Single-point report; runs the forgery experiment too when a strategy is given.
SecurityReport build_report(const protocol::ProtocolConfig& config, std::uint64_t n_trials, std::uint64_t seed,
                            int forge_rounds, int threads,
                            std::optional<adversary::StrategyKind> strategy = std::nullopt);

std::string to_json(const SecurityReport& report);
std::string to_json(const adversary::ForgeryReport& report);
void write_text(std::ostream& os, const SecurityReport& report);
void write_text(std::ostream& os, const adversary::ForgeryReport& report);

}  // namespace qtoken::harness
