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

// Gate sequences shared by the state-vector steps and the exact density-matrix
// evaluation. Works for any state type with apply_unitary overloads.

#include <cmath>

#include "qtoken/qcore/gates.hpp"
#include "qtoken/qcore/state.hpp"

namespace qtoken::protocol::circuit {

using qcore::Qubit;
namespace gates = qcore::gates;

/// Memory rotation taking |up> to sqrt(alpha)|up> + sqrt(1 - alpha)|down>.
inline qcore::Matrix memory_rotation(double alpha) { return gates::ry(2.0 * std::acos(std::sqrt(alpha))); }

template <class State>
State entangle_am(const State& s, double alpha) {
  return apply_unitary(apply_unitary(s, memory_rotation(alpha), {Qubit::M}), gates::cnot(), {Qubit::M, Qubit::A});
}

template <class State>
State emit_timebin(const State& s, double theta) {
  return apply_unitary(apply_unitary(s, gates::cnot(), {Qubit::A, Qubit::P}), gates::phase(theta), {Qubit::P});
}

template <class State>
State disentangle(const State& s) {
  return apply_unitary(s, gates::cnot(), {Qubit::M, Qubit::A});
}

template <class State>
State swap_memory(const State& s) {
  return apply_unitary(s, gates::swap(), {Qubit::M, Qubit::A});
}

template <class State>
State correct_photon(const State& s, int r1, bool active) {
  if (active && r1 == 1) {
    return apply_unitary(s, gates::pauli_x(), {Qubit::P});
  }
  return s;
}

inline qcore::StateVector fresh(Qubit q) { return qcore::StateVector::basis({q}, 0); }

/// (|0 E> + e^{i theta}|-1 L>)/sqrt(2) on (A, P).
inline qcore::StateVector ancilla_photon_pair(double theta) {
  auto pair = qcore::tensor(fresh(Qubit::A), fresh(Qubit::P));
  pair = apply_unitary(pair, gates::hadamard(), {Qubit::A});
  return emit_timebin(pair, theta);
}

inline const qcore::Labels& canonical_order() {
  static const qcore::Labels order{Qubit::A, Qubit::M, Qubit::P};
  return order;
}

}  // namespace qtoken::protocol::circuit
