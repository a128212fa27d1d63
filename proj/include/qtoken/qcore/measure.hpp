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
#include <utility>

#include "qtoken/qcore/state.hpp"

namespace qtoken::qcore {

/// Time-bin phase basis |+-_phi> = (|E> +- e^{i phi} |L>) / sqrt(2).
class PhaseBasis {
 public:
  explicit PhaseBasis(double phi);

  double phi() const noexcept { return phi_; }
  /// bit 0 -> |+_phi>, bit 1 -> |-_phi>.
  Vector ket(int bit) const;

 private:
  double phi_;  // in [0, 2 pi)
};

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);

struct Projection {
  double probability = 0.0;
  StateVector state;  // renormalized; meaningless when probability == 0
};

/// Projects `target` onto the single-qubit ket; the target stays in the register.
Projection project(const StateVector& state, Qubit target, const Vector& ket);
/// Projects the two targets onto a two-qubit ket.
Projection project(const StateVector& state, Qubit first, Qubit second, const Vector& ket);

/// Unnormalized branch P rho P for a rank-one projector onto `ket` over `targets`.
DensityMatrix project_branch(const DensityMatrix& rho, std::span<const Qubit> targets, const Vector& ket);

struct Measurement {
  int bit = 0;
  double probability = 0.0;
  StateVector state;
};

/// Born-rule measurement of a single qubit in a phase basis.
Measurement measure_in_phase_basis(const StateVector& state, Qubit target, const PhaseBasis& basis, Rng& rng);

/// Computational-basis measurement of a single qubit.
Measurement measure_computational(const StateVector& state, Qubit target, Rng& rng);

enum class BellState : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

Vector bell_ket(BellState which);

/// Classical bits reported for each Bell state.
struct BellLabeling {
  std::array<std::pair<int, int>, 4> bits;

  /// Phi+ -> 00, Phi- -> 01, Psi+ -> 11, Psi- -> 10. The Z correction is r1 xor r2, X is r1.
  static BellLabeling canonical();
  std::pair<int, int> operator()(BellState which) const { return bits[static_cast<std::size_t>(which)]; }
};

struct BellMeasurement {
  int r1 = 0;
  int r2 = 0;
  BellState which = BellState::PhiPlus;
  double probability = 0.0;
  StateVector state;
};

BellMeasurement bell_measure(const StateVector& state, Qubit first, Qubit second, Rng& rng,
                             const BellLabeling& labeling = BellLabeling::canonical());

}  // namespace qtoken::qcore
