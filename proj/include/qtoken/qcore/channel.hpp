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

#include "qtoken/qcore/state.hpp"

namespace qtoken::qcore {

/// Set of Kraus operators on k qubits satisfying sum K^dagger K = I.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> operators);

  static KrausChannel identity(std::size_t num_qubits);
  /// Z applied with probability p; scales single-qubit coherences by (1 - 2p).
  static KrausChannel phase_flip(double p);
  /// rho -> f rho + (1 - f) I/4 on two qubits (Pauli-twirl form).
  static KrausChannel two_qubit_depolarizing(double f);

  const std::vector<Matrix>& operators() const noexcept { return operators_; }
  std::size_t num_qubits() const noexcept { return num_qubits_; }
  double completeness_defect() const;

 private:
  std::vector<Matrix> operators_;
  std::size_t num_qubits_ = 0;
};

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, std::span<const Qubit> targets);
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, std::initializer_list<Qubit> targets);

/// Quantum-trajectory unravelling: picks Kraus operator k with probability
/// ||K_k psi||^2 and returns the renormalized branch.
StateVector sample_channel(const StateVector& state, const KrausChannel& ch, std::span<const Qubit> targets, Rng& rng);
StateVector sample_channel(const StateVector& state, const KrausChannel& ch, std::initializer_list<Qubit> targets,
                           Rng& rng);

}  // namespace qtoken::qcore
