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

#include "qtoken/qcore/types.hpp"

namespace qtoken::qcore::gates {

Matrix identity(std::size_t num_qubits);
Matrix hadamard();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
/// diag(1, e^{i theta}): phase on the |1> component.
Matrix phase(double theta);
/// Real rotation exp(-i angle Y / 2).
Matrix ry(double angle);
/// Control is the first target, flip target the second.
Matrix cnot();
Matrix swap();

/// max |U^dagger U - I| over all entries.
double unitarity_defect(const Matrix& u);

}  // namespace qtoken::qcore::gates
