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

#include "qtoken/protocol/steps.hpp"

#include <cmath>

#include "protocol_circuit.hpp"
#include "qtoken/qcore/state.hpp"

namespace qtoken::protocol {

using qcore::QuantumError;
using qcore::Qubit;

StateVector prepare_am_entanglement(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw QuantumError("alpha must lie in [0, 1]");
  }
  const auto ground = qcore::StateVector::basis({Qubit::A, Qubit::M}, 0);
  return circuit::entangle_am(ground, alpha);
}

StateVector entangle_photon_timebin(const StateVector& state, double theta) {
  if (state.holds(Qubit::P)) {
    throw QuantumError("photon is already entangled with the register");
  }
  if (!state.holds(Qubit::A)) {
    throw QuantumError("time-bin emission needs the ancilla");
  }
  auto joined = qcore::tensor(state, circuit::fresh(Qubit::P));
  return circuit::emit_timebin(joined, theta);
}

Issuance bank_issue(const StateVector& state, const PhaseBasis& phi1, Rng& rng) {
  auto m = qcore::measure_in_phase_basis(state, Qubit::P, phi1, rng);
  return {m.bit, qcore::drop_qubit(m.state, Qubit::P)};
}

namespace {

// Register after the second splitter, Path qubit still unread.
StateVector interferometer_output(const StateVector& state, const PhaseBasis& phi1) {
  namespace gates = qcore::gates;
  if (!state.holds(Qubit::P)) {
    throw QuantumError("no photon to send through the interferometer");
  }
  // Path qubit: |Short> = 0, |Long> = 1, photon enters in |Short>.
  auto s = qcore::tensor(state, circuit::fresh(Qubit::Path));
  // First splitter + delay: the early bin is routed into the long arm.
  qcore::Matrix route = qcore::Matrix::Identity(4, 4);
  route(0, 0) = 0.0;
  route(1, 1) = 0.0;
  route(0, 1) = 1.0;
  route(1, 0) = 1.0;
  s = apply_unitary(s, route, {Qubit::P, Qubit::Path});
  // The long-arm delay aligns the early bin with the late one: arrival time no
  // longer carries information, so the time-bin qubit ends in |L> and factors out.
  s = apply_unitary(s, gates::cnot(), {Qubit::Path, Qubit::P});
  s = qcore::drop_qubit(s, Qubit::P);
  s = apply_unitary(s, gates::phase(phi1.phi()), {Qubit::Path});
  return apply_unitary(s, gates::hadamard(), {Qubit::Path});
}

}  // namespace

InterferometerIssuance interferometer_issue(const StateVector& state, const PhaseBasis& phi1, Rng& rng) {
  auto click = qcore::measure_computational(interferometer_output(state, phi1), Qubit::Path, rng);
  return {click.bit == 0 ? Detector::D1 : Detector::D2, qcore::drop_qubit(click.state, Qubit::Path)};
}

qcore::Projection bank_branch(const StateVector& state, const PhaseBasis& phi1, int m1) {
  auto p = qcore::project(state, Qubit::P, phi1.ket(m1));
  if (p.probability > 0.0) {
    p.state = qcore::drop_qubit(p.state, Qubit::P);
  }
  return p;
}

qcore::Projection interferometer_branch(const StateVector& state, const PhaseBasis& phi1, Detector detector) {
  qcore::Vector ket = qcore::Vector::Zero(2);
  ket(detector == Detector::D1 ? 0 : 1) = 1.0;
  auto p = qcore::project(interferometer_output(state, phi1), Qubit::Path, ket);
  if (p.probability > 0.0) {
    p.state = qcore::drop_qubit(p.state, Qubit::Path);
  }
  return p;
}

StateVector store_token(const StateVector& state) {
  if (state.holds(Qubit::P)) {
    throw QuantumError("issuance photon must be consumed before storage");
  }
  const auto s = circuit::disentangle(state);
  const auto ancilla = qcore::partial_trace(qcore::DensityMatrix(s), {Qubit::A});
  if (ancilla.purity() < 1.0 - 1e-10) {
    throw QuantumError("ancilla is still entangled with the memory after storage");
  }
  return qcore::drop_qubit(s, Qubit::A);
}

StateVector reentangle_photon(const StateVector& user_state, double theta2) {
  if (user_state.holds(Qubit::P)) {
    throw QuantumError("a photon is already attached to the register");
  }
  auto memory = user_state;
  if (memory.holds(Qubit::A)) {
    const auto a = qcore::partial_trace(qcore::DensityMatrix(memory), {Qubit::A});
    if (std::abs(a(0, 0).real() - 1.0) > qcore::kTolerance) {
      throw QuantumError("ancilla was not reset to |0> before re-entangling");
    }
    memory = qcore::drop_qubit(memory, Qubit::A);
  }
  if (memory.labels() != qcore::Labels{Qubit::M}) {
    throw QuantumError("re-entangling expects a register holding only the memory");
  }
  return qcore::reorder(qcore::tensor(memory, circuit::ancilla_photon_pair(theta2)), circuit::canonical_order());
}

StateVector swap_memory_to_ancilla(const StateVector& state) { return circuit::swap_memory(state); }

PhaseBasis verification_basis(double phi) { return PhaseBasis(-phi); }

Verification teleport_and_verify(const StateVector& state, double phi2, Rng& rng, const TeleportOptions& options) {
  auto s = options.swap_before_bsm ? swap_memory_to_ancilla(state) : state;
  auto bsm = noise::noisy_bsm(s, Qubit::A, Qubit::M, options.f_bsm, options.bsm_model, rng, options.labeling);
  auto photon = circuit::correct_photon(bsm.state, bsm.r1, options.active_correction);
  const auto m2 = qcore::measure_in_phase_basis(photon, Qubit::P, verification_basis(phi2), rng);
  return {bsm.r1, bsm.r2, m2.bit, bsm.scrambled};
}

bool verify(int m1, int m2, int r1, int r2) { return ((m1 ^ r1 ^ r2) & 1) == (m2 & 1); }

}  // namespace qtoken::protocol
