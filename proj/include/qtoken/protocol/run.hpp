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

#include "qtoken/protocol/parties.hpp"

namespace qtoken::protocol {

/// Holds the ancilla and the memory; the memory never leaves this party.
class User {
 public:
  explicit User(Session& session) : session_(session) {}

  void prepare(double alpha);
  void emit_issuance_photon(double theta1);
  /// Photon lost in transit: the attempt is abandoned and the register cleared.
  void abandon_issuance();
  void send_photon(Role to);
  void store();
  void dephase(const qcore::KrausChannel& channel, Rng& rng);
  void emit_verification_photon(double theta2);
  void abandon_verification_photon();
  void swap_memory();
  void bell_measure(const TeleportOptions& options, Rng& rng, Role announce_to);

 private:
  Session& session_;
  std::optional<StateVector> stored_;  // memory-only token while a P2 attempt is in flight
};

class Bank {
 public:
  Bank(Session& session, double phi) : session_(session), phi_(PhaseBasis(phi).phi()) {}

  /// Reads the received photon, records the token and announces m1 to `announce_to`.
  TokenRecord issue(Rng& rng, Role announce_to, bool use_interferometer = false);
  double secret() const noexcept { return phi_; }

 private:
  Session& session_;
  double phi_;
};

class Verifier {
 public:
  explicit Verifier(Session& session) : session_(session) {}

  /// Pre-shared basis secret (out of band from the bank).
  void receive_secret(double phi) { phi_ = phi; }
  struct Outcome {
    int m1, r1, r2, m2;
    bool accepted;
  };
  /// Collects m1, r1, r2 from the channel, corrects and reads P2, applies the condition.
  Outcome check(Rng& rng, bool active_correction);

 private:
  Session& session_;
  double phi_ = 0.0;
};

/// Steps 1-7 with the configured imperfections. `seed` is only recorded.
Transcript run_honest_protocol(const ProtocolConfig& config, Rng& rng, std::uint64_t seed = 0,
                               OpLog* log = nullptr);

}  // namespace qtoken::protocol
