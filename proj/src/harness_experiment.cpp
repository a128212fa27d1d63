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

#include "qtoken/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qtoken/harness/parallel.hpp"
#include "qtoken/harness/rng.hpp"
#include "qtoken/protocol/exact.hpp"
#include "qtoken/protocol/run.hpp"
#include "qtoken/util/format.hpp"

namespace qtoken::harness {

using protocol::ProtocolConfig;
using util::format_double;

namespace {

// Acceptance is a trigonometric polynomial of degree <= 2 in the bank phase, so
// the equispaced rule with 16 nodes averages it exactly.
constexpr int kPhaseNodes = 16;

double exact_fixed_alpha(const ProtocolConfig& config, double alpha) {
  protocol::ExactOptions opt;
  opt.alpha = alpha;
  if (config.phi1) {
    opt.phi1 = *config.phi1;
    return protocol::exact_acceptance(config, opt);
  }
  if (config.active_correction) {
    return protocol::exact_acceptance(config, opt);
  }
  double sum = 0.0;
  for (int k = 0; k < kPhaseNodes; ++k) {
    opt.phi1 = 2.0 * std::numbers::pi * k / kPhaseNodes;
    sum += protocol::exact_acceptance(config, opt);
  }
  return sum / kPhaseNodes;
}

}  // namespace

double exact_acceptance(const ProtocolConfig& config) {
  config.validate();
  const auto& mode = config.noise.alpha_mode;
  if (mode.kind == noise::AlphaMode::Kind::fixed) {
    return exact_fixed_alpha(config, mode.value);
  }
  return analytics::integrate_unit([&](double alpha) { return exact_fixed_alpha(config, alpha); }, 1e-11);
}

McResult run_mc(const ProtocolConfig& config, std::uint64_t n_trials, std::uint64_t seed, const McOptions& options) {
  if (n_trials < 1) {
    throw std::invalid_argument("run_mc needs at least one trial");
  }
  config.validate();
  std::vector<protocol::Transcript> transcripts(n_trials);
  parallel_chunks(n_trials, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto s = stream_seed(seed, i);
      qcore::Rng rng(s);
      transcripts[i] = protocol::run_honest_protocol(config, rng, s);
    }
  });

  McResult r;
  r.trials = n_trials;
  for (const auto& t : transcripts) {
    if (t.failed) {
      ++r.failed;
      continue;
    }
    ++r.completed;
    r.accepted += t.accepted ? 1 : 0;
  }
  r.estimate = r.completed > 0 ? static_cast<double>(r.accepted) / static_cast<double>(r.completed)
                               : std::numeric_limits<double>::quiet_NaN();
  r.ci = wilson(r.accepted, r.completed);
  if (options.keep_transcripts) {
    r.transcripts = std::move(transcripts);
  }
  return r;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"alpha", "sigma_theta", "delta_phi", "t_s",
                                              "t_m",   "f_bsm",       "p_loss",    "max_repetitions"};
  return names;
}

ProtocolConfig with_parameter(ProtocolConfig config, const std::string& name, double value) {
  auto& n = config.noise;
  if (name == "alpha") {
    n.alpha_mode = noise::AlphaMode::fixed(value);
  } else if (name == "sigma_theta") {
    n.sigma_theta = value;
  } else if (name == "delta_phi") {
    n.delta_phi = value;
  } else if (name == "t_s") {
    n.t_s = value;
  } else if (name == "t_m") {
    n.t_m = value;
  } else if (name == "f_bsm") {
    n.f_bsm = value;
  } else if (name == "p_loss") {
    n.p_loss = value;
  } else if (name == "max_repetitions") {
    if (value != std::floor(value)) {
      throw noise::ConfigError("max_repetitions must be an integer");
    }
    n.max_repetitions = static_cast<int>(value);
  } else {
    throw noise::ConfigError("unknown sweep parameter '" + name + "'");
  }
  config.validate();
  return config;
}

void SweepSpec::validate() const {
  if (values.empty()) {
    throw noise::ConfigError("sweep grid is empty");
  }
  if (trials < 1) {
    throw noise::ConfigError("sweep needs at least one trial per point");
  }
  if (forge_rounds < 1) {
    throw noise::ConfigError("forge_rounds must be >= 1");
  }
  const auto& names = sweep_parameters();
  if (std::find(names.begin(), names.end(), parameter) == names.end()) {
    throw noise::ConfigError("unknown sweep parameter '" + parameter + "'");
  }
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const ProtocolConfig& config, int threads) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double v : spec.values) {
    const auto point = with_parameter(config, spec.parameter, v);
    const auto mc = run_mc(point, spec.trials, spec.seed, {threads, false});
    SweepRow row;
    row.parameter_value = v;
    row.exact_p = exact_acceptance(point);
    row.mc_p = mc.estimate;
    row.ci_lo = mc.ci.lo;
    row.ci_hi = mc.ci.hi;
    row.analytic_p = analytics::predicted_acceptance(point);
    row.soundness = analytics::soundness(row.analytic_p, 0.5);
    row.forge_n = analytics::forge_bound(row.analytic_p, spec.forge_rounds);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv_header() { return "parameter_value,exact_p,mc_p,ci_lo,ci_hi,analytic_p,soundness,forge_n"; }

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << sweep_csv_header() << '\n';
  for (const auto& r : rows) {
    bool first = true;
    for (double v : {r.parameter_value, r.exact_p, r.mc_p, r.ci_lo, r.ci_hi, r.analytic_p, r.soundness, r.forge_n}) {
      if (!first) {
        os << ',';
      }
      os << format_double(v, util::kCsvDigits);
      first = false;
    }
    os << '\n';
  }
}

namespace {

std::string row_json(const SweepRow& r) {
  return util::JsonObject{}
      .add("parameter_value", r.parameter_value)
      .add("exact_p", r.exact_p)
      .add("mc_p", r.mc_p)
      .add("ci_lo", r.ci_lo)
      .add("ci_hi", r.ci_hi)
      .add("analytic_p", r.analytic_p)
      .add("soundness", r.soundness)
      .add("forge_n", r.forge_n)
      .str();
}

std::string interval_json(const Interval& ci) { return util::JsonObject{}.add("lo", ci.lo).add("hi", ci.hi).str(); }

}  // namespace

void write_sweep_json(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string array = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      array += ",";
    }
    array += row_json(rows[i]);
  }
  array += "]";
  os << util::JsonObject{}
            .add("parameter", spec.parameter)
            .add("trials", static_cast<unsigned long long>(spec.trials))
            .add("seed", static_cast<unsigned long long>(spec.seed))
            .add("forge_rounds", spec.forge_rounds)
            .add_raw("rows", array)
            .str()
     << '\n';
}

void write_plot_data(std::ostream& os, const SweepSpec& spec, const ProtocolConfig& config,
                     const std::vector<SweepRow>& rows) {
  const bool storage = spec.parameter == "t_s";
  os << (storage ? "# t_s/t_m" : "# " + spec.parameter) << "\tacceptance\n";
  for (const auto& r : rows) {
    const double x = storage ? r.parameter_value / config.noise.t_m : r.parameter_value;
    os << format_double(x, util::kCsvDigits) << '\t' << format_double(r.mc_p, util::kCsvDigits) << '\n';
  }
}

SecurityReport build_report(const ProtocolConfig& config, std::uint64_t n_trials, std::uint64_t seed,
                            int forge_rounds, int threads, std::optional<adversary::StrategyKind> strategy) {
  SecurityReport rep;
  rep.exact_p = exact_acceptance(config);
  rep.mc = run_mc(config, n_trials, seed, {threads, false});
  rep.analytic_p = analytics::predicted_acceptance(config);
  rep.metrics = analytics::security_metrics(rep.analytic_p, forge_rounds);
  if (strategy) {
    const auto s = adversary::make_strategy(*strategy);
    rep.forgery = adversary::run_forgery_experiment(*s, config, forge_rounds, n_trials, seed, 0.01, threads);
  }
  return rep;
}

std::string to_json(const adversary::ForgeryReport& f) {
  util::JsonObject o;
  o.add("strategy", adversary::to_string(f.kind))
      .add("n_rounds", f.n_rounds)
      .add("n_trials", static_cast<unsigned long long>(f.n_trials))
      .add("per_round_acceptance", f.per_round)
      .add_raw("per_round_ci", interval_json(f.per_round_ci))
      .add("all_rounds_acceptance", f.all_rounds)
      .add_raw("all_rounds_ci", interval_json(f.all_rounds_ci))
      .add("f_verif_avg", f.f_verif_avg)
      .add("forge_bound_n", f.forge_bound_n)
      .add("guess_bound_n", f.guess_n)
      .add("within_bound", f.within_bound);
  if (f.warning) {
    o.add("warning", *f.warning);
  }
  return o.str();
}

std::string to_json(const SecurityReport& r) {
  util::JsonObject o;
  o.add("exact_p", r.exact_p)
      .add("mc_p", r.mc.estimate)
      .add("ci_lo", r.mc.ci.lo)
      .add("ci_hi", r.mc.ci.hi)
      .add("trials", static_cast<unsigned long long>(r.mc.trials))
      .add("completed", static_cast<unsigned long long>(r.mc.completed))
      .add("failed", static_cast<unsigned long long>(r.mc.failed))
      .add("analytic_p", r.analytic_p)
      .add("f_forge_single", r.metrics.f_forge_single)
      .add("epsilon_sound", r.metrics.epsilon_sound)
      .add("forge_n", r.metrics.f_forge_n)
      .add("guess_n", r.metrics.guess_n);
  if (r.forgery) {
    o.add_raw("forgery", to_json(*r.forgery));
  }
  return o.str();
}

void write_text(std::ostream& os, const adversary::ForgeryReport& f) {
  os << "forgery strategy          " << adversary::to_string(f.kind) << '\n'
     << "rounds x trials           " << f.n_rounds << " x " << f.n_trials << '\n'
     << "per-round acceptance      " << format_double(f.per_round, 6) << "  [" << format_double(f.per_round_ci.lo, 6)
     << ", " << format_double(f.per_round_ci.hi, 6) << "]\n"
     << "all-rounds acceptance     " << format_double(f.all_rounds, 6) << "  ["
     << format_double(f.all_rounds_ci.lo, 6) << ", " << format_double(f.all_rounds_ci.hi, 6) << "]\n"
     << "bound <F_verif>^n         " << format_double(f.forge_bound_n, 6) << '\n'
     << "guessing 2^-n             " << format_double(f.guess_n, 6) << '\n'
     << "within bound              " << (f.within_bound ? "yes" : "no") << '\n';
  if (f.warning) {
    os << "warning: " << *f.warning << '\n';
  }
}

void write_text(std::ostream& os, const SecurityReport& r) {
  os << "exact acceptance          " << format_double(r.exact_p, 9) << '\n'
     << "monte carlo acceptance    " << format_double(r.mc.estimate, 6) << "  [" << format_double(r.mc.ci.lo, 6)
     << ", " << format_double(r.mc.ci.hi, 6) << "]  (" << r.mc.completed << " completed, " << r.mc.failed
     << " failed)\n"
     << "analytic <F_verif>        " << format_double(r.analytic_p, 9) << '\n'
     << "forgery base F_forge(1)   " << format_double(r.metrics.f_forge_single, 6) << '\n'
     << "epsilon_sound             " << format_double(r.metrics.epsilon_sound, 9) << '\n'
     << "<F_verif>^n               " << format_double(r.metrics.f_forge_n, 9) << '\n'
     << "(1/2)^n                   " << format_double(r.metrics.guess_n, 9) << '\n';
  if (r.forgery) {
    write_text(os, *r.forgery);
  }
}

}  // namespace qtoken::harness
