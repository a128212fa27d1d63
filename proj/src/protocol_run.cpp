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

#include "qtoken/protocol/run.hpp"

#include <numbers>

#include "qtoken/protocol/steps.hpp"
#include "qtoken/qcore/gates.hpp"

namespace qtoken::protocol {

void User::prepare(double alpha) {
  session_.acquire(Role::user, Qubit::A);
  session_.acquire(Role::user, Qubit::M);
  session_.act(Role::user, OpKind::prepare_am, {Qubit::A, Qubit::M});
  session_.state = prepare_am_entanglement(alpha);
}

void User::emit_issuance_photon(double theta1) {
  session_.acquire(Role::user, Qubit::P);
  session_.act(Role::user, OpKind::emit_photon, {Qubit::A, Qubit::P});
  session_.state = entangle_photon_timebin(*session_.state, theta1);
}

void User::abandon_issuance() {
  session_.release(Role::user, Qubit::P);
  session_.release(Role::user, Qubit::A);
  session_.release(Role::user, Qubit::M);
  session_.state.reset();
}

void User::send_photon(Role to) { session_.transfer(Qubit::P, Role::user, to); }

void User::store() {
  session_.act(Role::user, OpKind::store_token, {Qubit::A, Qubit::M});
  session_.state = store_token(*session_.state);
  session_.release(Role::user, Qubit::A);
}

void User::dephase(const qcore::KrausChannel& channel, Rng& rng) {
  session_.act(Role::user, OpKind::dephase_memory, {Qubit::M});
  session_.state = qcore::sample_channel(*session_.state, channel, {Qubit::M}, rng);
}

void User::emit_verification_photon(double theta2) {
  session_.acquire(Role::user, Qubit::A);
  session_.acquire(Role::user, Qubit::P);
  session_.act(Role::user, OpKind::reset_ancilla, {Qubit::A});
  session_.act(Role::user, OpKind::emit_photon, {Qubit::A, Qubit::P});
  stored_ = *session_.state;
  session_.state = reentangle_photon(*stored_, theta2);
}

void User::abandon_verification_photon() {
  session_.release(Role::user, Qubit::P);
  session_.release(Role::user, Qubit::A);
  session_.state = *stored_;
}

void User::swap_memory() {
  session_.act(Role::user, OpKind::swap_memory, {Qubit::M, Qubit::A});
  session_.state = swap_memory_to_ancilla(*session_.state);
}

void User::bell_measure(const TeleportOptions& options, Rng& rng, Role announce_to) {
  session_.act(Role::user, OpKind::bell_measure, {Qubit::A, Qubit::M});
  auto bsm = noise::noisy_bsm(*session_.state, Qubit::A, Qubit::M, options.f_bsm, options.bsm_model, rng,
                              options.labeling);
  session_.state = std::move(bsm.state);
  session_.release(Role::user, Qubit::A);
  session_.announce(Role::user, announce_to, Announcement::r1, bsm.r1);
  session_.announce(Role::user, announce_to, Announcement::r2, bsm.r2);
}

TokenRecord Bank::issue(Rng& rng, Role announce_to, bool use_interferometer) {
  session_.act(Role::bank, OpKind::measure_photon, {Qubit::P});
  const PhaseBasis basis(phi_);
  TokenRecord record{phi_, 0, session_.log.records().size()};
  if (use_interferometer) {
    auto r = interferometer_issue(*session_.state, basis, rng);
    record.m1 = r.detector == Detector::D1 ? 0 : 1;
    session_.state = std::move(r.state);
  } else {
    auto r = bank_issue(*session_.state, basis, rng);
    record.m1 = r.m1;
    session_.state = std::move(r.state);
  }
  session_.release(Role::bank, Qubit::P);
  session_.announce(Role::bank, announce_to, Announcement::m1, record.m1);
  return record;
}

Verifier::Outcome Verifier::check(Rng& rng, bool active_correction) {
  const int m1 = session_.receive(Role::verifier, Announcement::m1);
  const int r1 = session_.receive(Role::verifier, Announcement::r1);
  const int r2 = session_.receive(Role::verifier, Announcement::r2);
  auto photon = *session_.state;
  if (active_correction && r1 == 1) {
    session_.act(Role::verifier, OpKind::correct_photon, {Qubit::P});
    photon = qcore::apply_unitary(photon, qcore::gates::pauli_x(), {Qubit::P});
  }
  session_.act(Role::verifier, OpKind::measure_photon, {Qubit::P});
  const auto m = qcore::measure_in_phase_basis(photon, Qubit::P, verification_basis(phi_), rng);
  session_.state = m.state;
  session_.release(Role::verifier, Qubit::P);
  session_.party(Role::verifier).pending.clear();
  return {m1, r1, r2, m.bit, verify(m1, m.bit, r1, r2)};
}

Transcript run_honest_protocol(const ProtocolConfig& config, Rng& rng, std::uint64_t seed, OpLog* log) {
  const auto& noise_cfg = config.noise;
  Transcript t;
  t.seed = seed;
  t.sampled_alpha = noise::sample_alpha(noise_cfg.alpha_mode, rng);
  const auto phases = noise::sample_phases(noise_cfg, rng);
  t.sampled_theta1 = phases.theta1;
  t.sampled_theta2 = phases.theta2;
  const double phi1 = config.phi1 ? *config.phi1 : 2.0 * std::numbers::pi * qcore::uniform01(rng);

  Session session;
  User user(session);
  Bank bank(session, phi1);
  Verifier verifier(session);
  verifier.receive_secret(bank.secret() - noise_cfg.delta_phi);

  const auto finish = [&](Transcript& out) -> Transcript {
    if (log != nullptr) {
      *log = std::move(session.log);
    }
    return out;
  };

  // Steps 1-3, repeated until the issuance photon reaches the bank.
  int issue_attempts = 0;
  while (true) {
    ++issue_attempts;
    user.prepare(t.sampled_alpha);
    user.emit_issuance_photon(t.sampled_theta1);
    if (noise::attempt_photon(noise_cfg.p_loss, rng)) {
      break;
    }
    user.abandon_issuance();
    if (issue_attempts >= noise_cfg.max_repetitions) {
      t.failed = true;
      t.repetitions_used = issue_attempts;
      return finish(t);
    }
  }
  user.send_photon(Role::bank);
  bank.issue(rng, Role::verifier);

  // Step 4 and storage.
  user.store();
  if (noise_cfg.t_s > 0.0) {
    user.dephase(noise::memory_dephasing_channel(noise_cfg.t_s, noise_cfg.t_m), rng);
  }

  // Step 5, repeated until P2 reaches the verifier.
  int verify_attempts = 0;
  while (true) {
    ++verify_attempts;
    user.emit_verification_photon(t.sampled_theta2);
    if (noise::attempt_photon(noise_cfg.p_loss, rng)) {
      break;
    }
    user.abandon_verification_photon();
    if (verify_attempts >= noise_cfg.max_repetitions) {
      t.failed = true;
      t.repetitions_used = std::max(issue_attempts, verify_attempts);
      return finish(t);
    }
  }
  user.send_photon(Role::verifier);
  t.repetitions_used = std::max(issue_attempts, verify_attempts);

  // Steps 6-7.
  TeleportOptions options;
  options.f_bsm = noise_cfg.f_bsm;
  options.bsm_model = noise_cfg.bsm_model;
  options.active_correction = config.active_correction;
  options.swap_before_bsm = config.swap_before_bsm;
  if (config.swap_before_bsm) {
    user.swap_memory();
  }
  user.bell_measure(options, rng, Role::verifier);
  const auto outcome = verifier.check(rng, config.active_correction);
  t.m1 = outcome.m1;
  t.r1 = outcome.r1;
  t.r2 = outcome.r2;
  t.m2 = outcome.m2;
  t.accepted = outcome.accepted;
  return finish(t);
}

}  // namespace qtoken::protocol
