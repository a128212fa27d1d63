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

#include <span>

#include "qtoken/qcore/types.hpp"

namespace qtoken::qcore {

/// Pure state over an ordered register. Amplitude index bit (n-1-k) belongs to
/// labels()[k], so the first label is the most significant bit.
class StateVector {
 public:
  /// Validates: unique labels, length 2^n, unit norm within kTolerance.
  StateVector(Labels labels, Vector amplitudes);

  static StateVector basis(Labels labels, std::size_t index);
  static StateVector qubit(Qubit label, Complex zero, Complex one);

  const Labels& labels() const noexcept { return labels_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

  std::size_t num_qubits() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  bool holds(Qubit q) const noexcept;
  std::size_t position(Qubit q) const;
  double norm() const { return amplitudes_.norm(); }

 private:
  struct Unchecked {};
  StateVector(Unchecked, Labels labels, Vector amplitudes)
      : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {}

  friend StateVector make_unchecked(Labels labels, Vector amplitudes);

  Labels labels_;
  Vector amplitudes_;
};

/// Mixed state over an ordered register, same index convention as StateVector.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (min eigenvalue >= -kPsdFloor).
  DensityMatrix(Labels labels, Matrix entries);
  explicit DensityMatrix(const StateVector& pure);

  static DensityMatrix maximally_mixed(Labels labels);

  const Labels& labels() const noexcept { return labels_; }
  const Matrix& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  std::size_t num_qubits() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  bool holds(Qubit q) const noexcept;
  std::size_t position(Qubit q) const;

  double trace() const { return entries_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;
  double hermiticity_defect() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, Labels labels, Matrix entries)
      : labels_(std::move(labels)), entries_(std::move(entries)) {}

  friend DensityMatrix make_unchecked(Labels labels, Matrix entries);

  Labels labels_;
  Matrix entries_;
};

StateVector make_unchecked(Labels labels, Vector amplitudes);
DensityMatrix make_unchecked(Labels labels, Matrix entries);

/// Lifts an operator on `targets` (first target = most significant) to the full register.
Matrix embed(const Matrix& op, const Labels& register_labels, std::span<const Qubit> targets);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Permutes the register into `order`, which must name exactly the held qubits.
StateVector reorder(const StateVector& state, const Labels& order);
DensityMatrix reorder(const DensityMatrix& rho, const Labels& order);

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::span<const Qubit> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const Qubit> targets);

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::initializer_list<Qubit> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::initializer_list<Qubit> targets);

/// Removes a qubit that is in a product state with the rest of the register.
/// Throws if the qubit is entangled (reduced purity below 1 - 1e-10).
StateVector drop_qubit(const StateVector& state, Qubit q);

DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// Largest entry-wise deviation between |a><a| and |b><b| (global phase blind).
double projector_distance(const StateVector& a, const StateVector& b);

}  // namespace qtoken::qcore
