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

#include <array>
#include <deque>
#include <optional>
#include <vector>

#include "qtoken/protocol/config.hpp"
#include "qtoken/protocol/steps.hpp"
#include "qtoken/protocol/transcript.hpp"

namespace qtoken::protocol {

using qcore::Qubit;

enum class Role : std::uint8_t { user, bank, verifier };

enum class OpKind : std::uint8_t {
  prepare_am,
  emit_photon,
  send_photon,
  measure_photon,
  store_token,
  dephase_memory,
  reset_ancilla,
  swap_memory,
  bell_measure,
  correct_photon,
};

/// One quantum operation: who did it and on which qubits (bit k set = Qubit k).
struct OpRecord {
  Role party;
  OpKind op;
  std::uint8_t qubits;

  bool touches(Qubit q) const { return (qubits >> static_cast<unsigned>(q)) & 1U; }
};

class OpLog {
 public:
  void record(Role party, OpKind op, std::initializer_list<Qubit> qubits);
  const std::vector<OpRecord>& records() const noexcept { return records_; }
  /// Every operation touching the memory qubit was performed by the user.
  bool memory_stays_with_user() const;
  void clear() { records_.clear(); }

 private:
  std::vector<OpRecord> records_;
};

struct PartyState {
  Role role;
  std::uint8_t held = 0;       // bitmask over Qubit
  std::vector<int> pending;    // classical bits received and not yet consumed

  bool holds(Qubit q) const { return (held >> static_cast<unsigned>(q)) & 1U; }
};

enum class Announcement : std::uint8_t { m1, r1, r2 };

/// Shared medium of one session: the joint quantum register, qubit custody and an
/// authenticated classical channel. Custody is enforced on every operation.
class Session {
 public:
  Session();

  PartyState& party(Role r) { return parties_[static_cast<std::size_t>(r)]; }
  const PartyState& party(Role r) const { return parties_[static_cast<std::size_t>(r)]; }

  /// Gives a fresh qubit to `owner`. Throws if someone else already holds it.
  void acquire(Role owner, Qubit q);
  /// Hands a qubit over. The memory qubit can never leave the user.
  void transfer(Qubit q, Role from, Role to);
  /// Qubit consumed by a measurement.
  void release(Role owner, Qubit q);
  /// Throws unless `who` holds every listed qubit, then logs the operation.
  void act(Role who, OpKind op, std::initializer_list<Qubit> qubits);

  void announce(Role from, Role to, Announcement what, int bit);
  int receive(Role to, Announcement what);

  std::optional<StateVector> state;
  OpLog log;

 private:
  struct Message {
    Role from;
    Role to;
    Announcement what;
    int bit;
  };
  std::array<PartyState, 3> parties_;
  std::deque<Message> channel_;
};

}  // namespace qtoken::protocol
