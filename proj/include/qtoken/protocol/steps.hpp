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

// Quantum steps of the token lifecycle as pure functions on state vectors.
// Registers are kept in (A, M, P) order.

#include "qtoken/noise/noise.hpp"
#include "qtoken/qcore/measure.hpp"

namespace qtoken::protocol {

using qcore::PhaseBasis;
using qcore::Rng;
using qcore::StateVector;

/// sqrt(alpha)|0 up> + sqrt(1 - alpha)|-1 down> on (A, M), built from |0 up> by a
/// memory rotation followed by a memory-controlled flip of the ancilla.
StateVector prepare_am_entanglement(double alpha);

/// Adds a fresh photon in |E>, emits the late bin from the |-1> branch and puts the
/// apparatus phase e^{i theta} on |L>. Throws if the register already holds a photon.
StateVector entangle_photon_timebin(const StateVector& state, double theta);

struct Issuance {
  int m1 = 0;
  StateVector state;  // (A, M) after the photon is consumed
};

/// Bank projects the photon onto |+-_phi1>; m1 = 0 for +, 1 for -. The A-M pair is
/// left in sqrt(alpha)|0 up> +- sqrt(1 - alpha) e^{i(theta1 - phi1)} |-1 down>.
Issuance bank_issue(const StateVector& state, const PhaseBasis& phi1, Rng& rng);

enum class Detector { D1, D2 };

struct InterferometerIssuance {
  Detector detector = Detector::D1;
  StateVector state;  // (A, M); equals bank_issue's up to a global phase
};

/// Same projection realized as an unbalanced Mach-Zehnder: the early bin takes the
/// long arm (phase phi1), the late bin the short arm, and a 50/50 splitter recombines
/// them onto D1 (sum port, m1 = 0) and D2 (difference port, m1 = 1).
InterferometerIssuance interferometer_issue(const StateVector& state, const PhaseBasis& phi1, Rng& rng);

/// Unsampled versions of the two issuance routes: probability of one outcome and
/// the (A, M) state it leaves.
qcore::Projection bank_branch(const StateVector& state, const PhaseBasis& phi1, int m1);
qcore::Projection interferometer_branch(const StateVector& state, const PhaseBasis& phi1, Detector detector);

/// Memory-controlled flip of the ancilla, then the ancilla is discarded.
/// Returns the memory-only token. Throws if the ancilla is still entangled.
StateVector store_token(const StateVector& state);

/// Resets the ancilla, prepares (|0 E> + e^{i theta2}|-1 L>)/sqrt(2) and returns the
/// (A, M, P) register. Accepts a memory-only register or one whose ancilla is in |0>.
StateVector reentangle_photon(const StateVector& user_state, double theta2);

/// SWAP(M, A).
StateVector swap_memory_to_ancilla(const StateVector& state);

/// The basis the verifier reads P2 in for a bank phase phi: the one containing
/// the teleported token, (|E> +- e^{-i phi}|L>)/sqrt(2).
PhaseBasis verification_basis(double phi);

struct TeleportOptions {
  double f_bsm = 1.0;
  noise::BsmModel bsm_model = noise::BsmModel::readout;
  bool active_correction = true;
  bool swap_before_bsm = false;
  qcore::BellLabeling labeling = qcore::BellLabeling::canonical();
};

struct Verification {
  int r1 = 0;
  int r2 = 0;
  int m2 = 0;
  bool scrambled = false;
};

/// Bell measurement on (A, M), conditional X on P2 when r1 = 1, then P2 is read in
/// verification_basis(phi2).
Verification teleport_and_verify(const StateVector& state, double phi2, Rng& rng,
                                 const TeleportOptions& options = {});

/// Strong verification condition m2 = m1 xor (r1 xor r2).
bool verify(int m1, int m2, int r1, int r2);

}  // namespace qtoken::protocol
