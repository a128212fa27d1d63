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

#include "qtoken/adversary/adversary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtoken/analytics/analytics.hpp"
#include "qtoken/harness/parallel.hpp"
#include "qtoken/harness/rng.hpp"
#include "qtoken/protocol/steps.hpp"
#include "qtoken/qcore/gates.hpp"

namespace qtoken::adversary {

using qcore::Qubit;

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::blind_guess:
      return "blind_guess";
    case StrategyKind::random_state:
      return "random_state";
    case StrategyKind::intercept_p2:
      return "intercept_p2";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& name) {
  for (auto k : {StrategyKind::blind_guess, StrategyKind::random_state, StrategyKind::intercept_p2}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown adversary strategy '" + name + "'");
}

int forge_blind(Rng& rng) { return static_cast<int>(rng() & 1U); }

qcore::StateVector forge_random_state(Rng& rng) {
  // Normalized complex Gaussian vector is Haar distributed.
  std::normal_distribution<double> g(0.0, 1.0);
  qcore::Vector v(2);
  for (int i = 0; i < 2; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = qcore::Complex(re, im);
  }
  v /= v.norm();
  return qcore::StateVector({Qubit::M}, v);
}

Forgery BlindGuess::forge(const PublicAnnouncement&, Rng& rng) const {
  ClaimedOutcome c;
  c.r1 = forge_blind(rng);
  c.r2 = forge_blind(rng);
  c.m2 = forge_blind(rng);
  return c;
}

Forgery RandomState::forge(const PublicAnnouncement&, Rng& rng) const {
  return SubstituteToken{forge_random_state(rng)};
}

Forgery InterceptP2::forge(const PublicAnnouncement& announcement, Rng& rng) const {
  namespace gates = qcore::gates;
  // Own pair (|0 E> + |1 L>)/sqrt(2) on a private qubit (labelled A here) and P.
  auto pair = qcore::StateVector::basis({Qubit::A, Qubit::P}, 0);
  pair = qcore::apply_unitary(pair, gates::hadamard(), {Qubit::A});
  pair = qcore::apply_unitary(pair, gates::cnot(), {Qubit::A, Qubit::P});
  const qcore::PhaseBasis guess(2.0 * std::numbers::pi * qcore::uniform01(rng));
  const auto m = qcore::measure_in_phase_basis(pair, Qubit::A, guess, rng);
  // The photon is now (|E> +- e^{-i g}|L>)/sqrt(2), i.e. the verifier's + or -
  // state when the guess equals the secret; r2 is chosen to make that pass.
  return SubstitutePhoton{qcore::drop_qubit(m.state, Qubit::A), 0, announcement.m1 ^ m.bit};
}

FixedState::FixedState(qcore::StateVector token) : token_(std::move(token)) {
  if (token_.labels() != qcore::Labels{Qubit::M}) {
    throw std::invalid_argument("a substitute token is a single qubit labelled M");
  }
}

Forgery FixedState::forge(const PublicAnnouncement&, Rng&) const { return SubstituteToken{token_}; }

std::unique_ptr<Strategy> make_strategy(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::blind_guess:
      return std::make_unique<BlindGuess>();
    case StrategyKind::random_state:
      return std::make_unique<RandomState>();
    case StrategyKind::intercept_p2:
      return std::make_unique<InterceptP2>();
  }
  throw std::invalid_argument("unknown strategy kind");
}

namespace {

// One honest issuance attacked once. Returns whether the verifier accepts.
bool attack_round(const Strategy& strategy, const protocol::ProtocolConfig& config, int round, Rng& rng) {
  const auto& n = config.noise;
  const double alpha = noise::sample_alpha(n.alpha_mode, rng);
  const auto phases = noise::sample_phases(n, rng);
  const double phi1 = config.phi1 ? *config.phi1 : 2.0 * std::numbers::pi * qcore::uniform01(rng);
  const double phi2 = phi1 - n.delta_phi;

  // The bank issues against the genuine user; only m1 becomes public.
  const auto issued = protocol::bank_issue(
      protocol::entangle_photon_timebin(protocol::prepare_am_entanglement(alpha), phases.theta1),
      qcore::PhaseBasis(phi1), rng);
  const PublicAnnouncement announcement{issued.m1, round};

  const Forgery forgery = strategy.forge(announcement, rng);
  if (const auto* c = std::get_if<ClaimedOutcome>(&forgery)) {
    return protocol::verify(issued.m1, c->m2, c->r1, c->r2);
  }
  if (const auto* t = std::get_if<SubstituteToken>(&forgery)) {
    protocol::TeleportOptions options;
    options.f_bsm = n.f_bsm;
    options.bsm_model = n.bsm_model;
    options.active_correction = config.active_correction;
    options.swap_before_bsm = config.swap_before_bsm;
    const auto joint = protocol::reentangle_photon(t->token, phases.theta2);
    const auto v = protocol::teleport_and_verify(joint, phi2, rng, options);
    return protocol::verify(issued.m1, v.m2, v.r1, v.r2);
  }
  const auto& p = std::get<SubstitutePhoton>(forgery);
  auto photon = p.photon;
  if (config.active_correction && p.r1 == 1) {
    photon = qcore::apply_unitary(photon, qcore::gates::pauli_x(), {Qubit::P});
  }
  const auto m2 = qcore::measure_in_phase_basis(photon, Qubit::P, protocol::verification_basis(phi2), rng);
  return protocol::verify(issued.m1, m2.bit, p.r1, p.r2);
}

}  // namespace

ForgeryReport run_forgery_experiment(const Strategy& strategy, const protocol::ProtocolConfig& config, int n_rounds,
                                     std::uint64_t n_trials, std::uint64_t seed, double target_ci_halfwidth,
                                     int threads) {
  if (n_rounds < 1) {
    throw std::invalid_argument("n_rounds must be >= 1");
  }
  if (n_trials < 1) {
    throw std::invalid_argument("n_trials must be >= 1");
  }
  config.validate();

  std::vector<std::uint8_t> trial_ok(n_trials, 0);
  std::vector<std::uint32_t> trial_rounds(n_trials, 0);
  harness::parallel_chunks(n_trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = harness::make_stream(seed, i);
      bool all = true;
      std::uint32_t passed = 0;
      for (int r = 0; r < n_rounds; ++r) {
        if (attack_round(strategy, config, r, rng)) {
          ++passed;
        } else {
          all = false;
        }
      }
      trial_ok[i] = all ? 1 : 0;
      trial_rounds[i] = passed;
    }
  });

  ForgeryReport rep;
  rep.kind = strategy.kind();
  rep.n_rounds = n_rounds;
  rep.n_trials = n_trials;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    rep.rounds_accepted += trial_rounds[i];
    rep.trials_accepted += trial_ok[i];
  }
  const std::uint64_t total_rounds = n_trials * static_cast<std::uint64_t>(n_rounds);
  rep.per_round = static_cast<double>(rep.rounds_accepted) / static_cast<double>(total_rounds);
  rep.per_round_ci = harness::wilson(rep.rounds_accepted, total_rounds);
  rep.all_rounds = static_cast<double>(rep.trials_accepted) / static_cast<double>(n_trials);
  rep.all_rounds_ci = harness::wilson(rep.trials_accepted, n_trials);
  rep.f_verif_avg = analytics::predicted_acceptance(config);
  rep.forge_bound_n = analytics::forge_bound(rep.f_verif_avg, n_rounds);
  rep.guess_n = std::pow(0.5, n_rounds);
  rep.within_bound = rep.all_rounds <= rep.forge_bound_n + 3.0 * rep.all_rounds_ci.halfwidth();
  if (rep.per_round_ci.halfwidth() > target_ci_halfwidth) {
    rep.warning = "n_trials too small: per-round CI half-width " + std::to_string(rep.per_round_ci.halfwidth()) +
                  " exceeds the requested " + std::to_string(target_ci_halfwidth);
  }
  return rep;
}

}  // namespace qtoken::adversary
