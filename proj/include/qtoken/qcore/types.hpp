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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qtoken::qcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

// Algebraic identities (norm, unitarity, trace, Kraus completeness).
inline constexpr double kTolerance = 1e-12;
// Floor for the smallest eigenvalue of a density matrix.
inline constexpr double kPsdFloor = 1e-10;

/// Register roles. Canonical ordering is the enum order, most significant first.
///   A     ancilla spin          |0>_A = 0, |-1>_A = 1
///   M     memory spin           |up>  = 0, |down> = 1
///   P     time-bin photon       |E>   = 0, |L>    = 1
///   Path  interferometer mode   |Short> = 0, |Long> = 1
enum class Qubit : std::uint8_t { A = 0, M = 1, P = 2, Path = 3 };

std::string_view to_string(Qubit q);

using Labels = std::vector<Qubit>;

/// Raised on any violated precondition of the state engine.
class QuantumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qtoken::qcore
