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

#include "qtoken/qcore/measure.hpp"

#include <cmath>
#include <numbers>

namespace qtoken::qcore {
namespace {

constexpr double kDegenerate = 1e-15;

Projection project_onto(const StateVector& state, std::span<const Qubit> targets, const Vector& ket) {
  const Matrix projector = ket * ket.adjoint();
  const Vector branch = embed(projector, state.labels(), targets) * state.amplitudes();
  const double p = branch.squaredNorm();
  if (p <= 0.0) {
    return {0.0, state};
  }
  return {p, make_unchecked(state.labels(), Vector(branch / std::sqrt(p)))};
}

// Draws index i with probability weights[i] / sum(weights).
template <std::size_t N>
std::size_t draw(const std::array<double, N>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) {
    total += w;
  }
  if (total < kDegenerate) {
    throw QuantumError("measurement on a degenerate (zero-norm) state");
  }
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (weights[i] > 0.0) {
      last_nonzero = i;
    }
    acc += weights[i];
    if (u < acc && weights[i] > 0.0) {
      return i;
    }
  }
  return last_nonzero;
}

}  // namespace

PhaseBasis::PhaseBasis(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) {
    phi_ += two_pi;
  }
  if (phi_ >= two_pi) {
    phi_ = 0.0;
  }
}

Vector PhaseBasis::ket(int bit) const {
  const double s = 1.0 / std::sqrt(2.0);
  const double sign = bit == 0 ? 1.0 : -1.0;
  Vector v(2);
  v << s, sign * s * std::polar(1.0, phi_);
  return v;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Projection project(const StateVector& state, Qubit target, const Vector& ket) {
  const std::array<Qubit, 1> targets{target};
  return project_onto(state, targets, ket);
}

Projection project(const StateVector& state, Qubit first, Qubit second, const Vector& ket) {
  const std::array<Qubit, 2> targets{first, second};
  return project_onto(state, targets, ket);
}

DensityMatrix project_branch(const DensityMatrix& rho, std::span<const Qubit> targets, const Vector& ket) {
  const Matrix full = embed(ket * ket.adjoint(), rho.labels(), targets);
  return make_unchecked(rho.labels(), Matrix(full * rho.entries() * full));
}

Measurement measure_in_phase_basis(const StateVector& state, Qubit target, const PhaseBasis& basis, Rng& rng) {
  std::array<Projection, 2> branches{project(state, target, basis.ket(0)), project(state, target, basis.ket(1))};
  const std::size_t bit = draw(std::array<double, 2>{branches[0].probability, branches[1].probability}, rng);
  return {static_cast<int>(bit), branches[bit].probability, std::move(branches[bit].state)};
}

Measurement measure_computational(const StateVector& state, Qubit target, Rng& rng) {
  std::array<Projection, 2> branches{project(state, target, Vector::Unit(2, 0)),
                                     project(state, target, Vector::Unit(2, 1))};
  const std::size_t bit = draw(std::array<double, 2>{branches[0].probability, branches[1].probability}, rng);
  return {static_cast<int>(bit), branches[bit].probability, std::move(branches[bit].state)};
}

Vector bell_ket(BellState which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case BellState::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellState::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellState::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellState::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

BellLabeling BellLabeling::canonical() {
  BellLabeling l;
  l.bits[static_cast<std::size_t>(BellState::PhiPlus)] = {0, 0};
  l.bits[static_cast<std::size_t>(BellState::PhiMinus)] = {0, 1};
  l.bits[static_cast<std::size_t>(BellState::PsiPlus)] = {1, 1};
  l.bits[static_cast<std::size_t>(BellState::PsiMinus)] = {1, 0};
  return l;
}

BellMeasurement bell_measure(const StateVector& state, Qubit first, Qubit second, Rng& rng,
                             const BellLabeling& labeling) {
  if (first == second) {
    throw QuantumError("Bell measurement needs two distinct qubits");
  }
  std::array<double, 4> probs{};
  std::vector<Projection> branches;
  branches.reserve(4);
  for (std::size_t k = 0; k < 4; ++k) {
    branches.push_back(project(state, first, second, bell_ket(static_cast<BellState>(k))));
    probs[k] = branches.back().probability;
  }
  const std::size_t k = draw(probs, rng);
  const auto which = static_cast<BellState>(k);
  const auto [r1, r2] = labeling(which);
  return {r1, r2, which, probs[k], std::move(branches[k].state)};
}

}  // namespace qtoken::qcore
