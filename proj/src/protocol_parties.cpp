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

#include "qtoken/protocol/parties.hpp"

#include <algorithm>
#include <string>

namespace qtoken::protocol {
namespace {

std::uint8_t bit(Qubit q) { return static_cast<std::uint8_t>(1U << static_cast<unsigned>(q)); }

const char* role_name(Role r) {
  switch (r) {
    case Role::user:
      return "user";
    case Role::bank:
      return "bank";
    case Role::verifier:
      return "verifier";
  }
  return "?";
}

}  // namespace

void OpLog::record(Role party, OpKind op, std::initializer_list<Qubit> qubits) {
  std::uint8_t mask = 0;
  for (Qubit q : qubits) {
    mask |= bit(q);
  }
  records_.push_back({party, op, mask});
}

bool OpLog::memory_stays_with_user() const {
  return std::all_of(records_.begin(), records_.end(),
                     [](const OpRecord& r) { return !r.touches(Qubit::M) || r.party == Role::user; });
}

Session::Session()
    : parties_{PartyState{Role::user, 0, {}}, PartyState{Role::bank, 0, {}}, PartyState{Role::verifier, 0, {}}} {}

void Session::acquire(Role owner, Qubit q) {
  for (const auto& p : parties_) {
    if (p.holds(q) && p.role != owner) {
      throw std::logic_error(std::string("qubit ") + std::string(qcore::to_string(q)) + " is held by the " +
                             role_name(p.role));
    }
  }
  party(owner).held |= bit(q);
}

void Session::transfer(Qubit q, Role from, Role to) {
  if (q == Qubit::M) {
    throw std::logic_error("the memory qubit never leaves the user");
  }
  if (!party(from).holds(q)) {
    throw std::logic_error(std::string("the ") + role_name(from) + " does not hold qubit " +
                           std::string(qcore::to_string(q)));
  }
  party(from).held &= static_cast<std::uint8_t>(~bit(q));
  party(to).held |= bit(q);
  log.record(from, OpKind::send_photon, {q});
}

void Session::release(Role owner, Qubit q) {
  if (!party(owner).holds(q)) {
    throw std::logic_error(std::string("the ") + role_name(owner) + " cannot release a qubit it does not hold");
  }
  party(owner).held &= static_cast<std::uint8_t>(~bit(q));
}

void Session::act(Role who, OpKind op, std::initializer_list<Qubit> qubits) {
  for (Qubit q : qubits) {
    if (!party(who).holds(q)) {
      throw std::logic_error(std::string("the ") + role_name(who) + " operated on qubit " +
                             std::string(qcore::to_string(q)) + " it does not hold");
    }
  }
  log.record(who, op, qubits);
}

void Session::announce(Role from, Role to, Announcement what, int bit_value) {
  channel_.push_back({from, to, what, bit_value & 1});
}

int Session::receive(Role to, Announcement what) {
  const auto it = std::find_if(channel_.begin(), channel_.end(),
                               [&](const Message& m) { return m.to == to && m.what == what; });
  if (it == channel_.end()) {
    throw std::logic_error(std::string("no pending announcement for the ") + role_name(to));
  }
  const int value = it->bit;
  party(to).pending.push_back(value);
  channel_.erase(it);
  return value;
}

}  // namespace qtoken::protocol
