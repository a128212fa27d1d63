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

#include "qtoken/qcore/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qtoken/qcore/gates.hpp"

namespace qtoken::qcore {
namespace {

void check_labels(const Labels& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw QuantumError("duplicate qubit label " + std::string(to_string(labels[i])));
      }
    }
  }
}

std::size_t find_position(const Labels& labels, Qubit q) {
  const auto it = std::find(labels.begin(), labels.end(), q);
  if (it == labels.end()) {
    throw QuantumError("qubit " + std::string(to_string(q)) + " is not in the register");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::size_t bit_of(std::size_t n, std::size_t position) { return n - 1 - position; }

// Index permutation taking `from` ordering to `to` ordering: result[i_from] = i_to.
std::vector<std::size_t> permutation(const Labels& from, const Labels& to) {
  if (from.size() != to.size()) {
    throw QuantumError("reorder must name exactly the held qubits");
  }
  const std::size_t n = from.size();
  std::vector<std::size_t> target_pos(n);
  for (std::size_t k = 0; k < n; ++k) {
    target_pos[k] = find_position(to, from[k]);
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> map(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((i >> bit_of(n, k)) & 1U) {
        j |= std::size_t{1} << bit_of(n, target_pos[k]);
      }
    }
    map[i] = j;
  }
  return map;
}

Labels concat(const Labels& a, const Labels& b) {
  Labels out = a;
  for (Qubit q : b) {
    if (std::find(a.begin(), a.end(), q) != a.end()) {
      throw QuantumError("tensor of overlapping registers on qubit " + std::string(to_string(q)));
    }
    out.push_back(q);
  }
  return out;
}

void check_unitary(const Matrix& u, std::size_t num_targets) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_targets);
  if (u.rows() != dim || u.cols() != dim) {
    throw QuantumError("operator dimension does not match the number of targets");
  }
  if (gates::unitarity_defect(u) > kTolerance) {
    throw QuantumError("operator is not unitary within tolerance");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Labels labels, Vector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
  check_labels(labels_);
  if (labels_.empty() || labels_.size() > 16) {
    throw QuantumError("register must hold between 1 and 16 qubits");
  }
  if (static_cast<std::size_t>(amplitudes_.size()) != (std::size_t{1} << labels_.size())) {
    throw QuantumError("amplitude count does not match 2^n for the given labels");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kTolerance) {
    throw QuantumError("state vector is not normalized");
  }
}

StateVector StateVector::basis(Labels labels, std::size_t index) {
  const std::size_t dim = std::size_t{1} << labels.size();
  if (index >= dim) {
    throw QuantumError("basis index out of range");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(labels), std::move(v));
}

StateVector StateVector::qubit(Qubit label, Complex zero, Complex one) {
  Vector v(2);
  v << zero, one;
  return StateVector({label}, std::move(v));
}

bool StateVector::holds(Qubit q) const noexcept {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t StateVector::position(Qubit q) const { return find_position(labels_, q); }

StateVector make_unchecked(Labels labels, Vector amplitudes) {
  return StateVector(StateVector::Unchecked{}, std::move(labels), std::move(amplitudes));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Labels labels, Matrix entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  check_labels(labels_);
  const std::size_t dim = std::size_t{1} << labels_.size();
  if (static_cast<std::size_t>(entries_.rows()) != dim ||
      static_cast<std::size_t>(entries_.cols()) != dim) {
    throw QuantumError("density matrix dimension does not match 2^n for the given labels");
  }
  if (hermiticity_defect() > kTolerance) {
    throw QuantumError("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > kTolerance) {
    throw QuantumError("density matrix trace is not 1");
  }
  if (min_eigenvalue() < -kPsdFloor) {
    throw QuantumError("density matrix is not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(const StateVector& pure)
    : labels_(pure.labels()),
      entries_(pure.amplitudes() * pure.amplitudes().adjoint()) {}

DensityMatrix DensityMatrix::maximally_mixed(Labels labels) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
  return DensityMatrix(std::move(labels), Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityMatrix::holds(Qubit q) const noexcept {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t DensityMatrix::position(Qubit q) const { return find_position(labels_, q); }

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = (entries_ + entries_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix make_unchecked(Labels labels, Matrix entries) {
  return DensityMatrix(DensityMatrix::Unchecked{}, std::move(labels), std::move(entries));
}

// ---------------------------------------------------------------------------
// Register algebra

Matrix embed(const Matrix& op, const Labels& register_labels, std::span<const Qubit> targets) {
  const std::size_t n = register_labels.size();
  const std::size_t k = targets.size();
  if (k == 0 || k > n) {
    throw QuantumError("operator needs between 1 and n targets");
  }
  std::vector<std::size_t> bits(k);
  std::size_t mask = 0;
  for (std::size_t t = 0; t < k; ++t) {
    bits[t] = bit_of(n, find_position(register_labels, targets[t]));
    if (mask & (std::size_t{1} << bits[t])) {
      throw QuantumError("repeated target qubit");
    }
    mask |= std::size_t{1} << bits[t];
  }
  if (static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k) || op.rows() != op.cols()) {
    throw QuantumError("operator dimension does not match the number of targets");
  }
  const auto sub_index = [&](std::size_t i) {
    std::size_t s = 0;
    for (std::size_t t = 0; t < k; ++t) {
      s = (s << 1) | ((i >> bits[t]) & 1U);
    }
    return static_cast<Eigen::Index>(s);
  };
  const std::size_t dim = std::size_t{1} << n;
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~mask) == (j & ~mask)) {
        full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = op(sub_index(i), sub_index(j));
      }
    }
  }
  return full;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Labels labels = concat(a.labels(), b.labels());
  const auto da = a.amplitudes().size();
  const auto db = b.amplitudes().size();
  Vector v(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    v.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return make_unchecked(std::move(labels), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Labels labels = concat(a.labels(), b.labels());
  const auto da = a.entries().rows();
  const auto db = b.entries().rows();
  Matrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
  }
  return make_unchecked(std::move(labels), std::move(m));
}

StateVector reorder(const StateVector& state, const Labels& order) {
  const auto map = permutation(state.labels(), order);
  Vector v(state.amplitudes().size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    v(static_cast<Eigen::Index>(map[i])) = state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return make_unchecked(order, std::move(v));
}

DensityMatrix reorder(const DensityMatrix& rho, const Labels& order) {
  const auto map = permutation(rho.labels(), order);
  const auto dim = rho.entries().rows();
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      m(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
          rho.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return make_unchecked(order, std::move(m));
}

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::span<const Qubit> targets) {
  check_unitary(u, targets.size());
  const Matrix full = embed(u, state.labels(), targets);
  return make_unchecked(state.labels(), Vector(full * state.amplitudes()));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const Qubit> targets) {
  check_unitary(u, targets.size());
  const Matrix full = embed(u, rho.labels(), targets);
  return make_unchecked(rho.labels(), Matrix(full * rho.entries() * full.adjoint()));
}

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::initializer_list<Qubit> targets) {
  return apply_unitary(state, u, std::span<const Qubit>(targets.begin(), targets.size()));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::initializer_list<Qubit> targets) {
  return apply_unitary(rho, u, std::span<const Qubit>(targets.begin(), targets.size()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep) {
  if (keep.empty()) {
    throw QuantumError("partial trace must keep at least one qubit");
  }
  check_labels(keep);
  for (Qubit q : keep) {
    find_position(rho.labels(), q);
  }
  // Move kept qubits to the front in the requested order, then sum the tail blocks.
  Labels order = keep;
  for (Qubit q : rho.labels()) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
      order.push_back(q);
    }
  }
  const DensityMatrix moved = reorder(rho, order);
  const auto dk = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
  const auto dt = static_cast<Eigen::Index>(std::size_t{1} << (order.size() - keep.size()));
  Matrix reduced = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        sum += moved.entries()(i * dt + t, j * dt + t);
      }
      reduced(i, j) = sum;
    }
  }
  return make_unchecked(keep, std::move(reduced));
}

StateVector drop_qubit(const StateVector& state, Qubit q) {
  state.position(q);
  if (state.num_qubits() == 1) {
    throw QuantumError("cannot drop the last qubit of a register");
  }
  Labels rest_labels;
  for (Qubit l : state.labels()) {
    if (l != q) {
      rest_labels.push_back(l);
    }
  }
  Labels order = rest_labels;
  order.push_back(q);
  const StateVector moved = reorder(state, order);
  // moved = rest (x) chi if the qubit is unentangled: pair rows (x0, x1).
  const auto half = moved.amplitudes().size() / 2;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, 2, Eigen::RowMajor>> pairs(
      moved.amplitudes().data(), half, 2);
  // chi is the dominant right singular vector; rest = pairs * conj(chi).
  Eigen::JacobiSVD<Eigen::Matrix<Complex, Eigen::Dynamic, 2>> svd(pairs, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 1 && sv(1) * sv(1) > 1e-10) {
    throw QuantumError("qubit " + std::string(to_string(q)) + " is entangled with the register");
  }
  const Vector chi = svd.matrixV().col(0);
  Vector rest = pairs * chi.conjugate();
  rest /= rest.norm();
  return make_unchecked(std::move(rest_labels), std::move(rest));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dimension() != psi.dimension()) {
    throw QuantumError("fidelity: dimension mismatch");
  }
  const StateVector aligned = rho.labels() == psi.labels() ? psi : reorder(psi, rho.labels());
  const Complex f = aligned.amplitudes().dot(rho.entries() * aligned.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double projector_distance(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw QuantumError("projector_distance: dimension mismatch");
  }
  const StateVector aligned = a.labels() == b.labels() ? b : reorder(b, a.labels());
  const Matrix pa = a.amplitudes() * a.amplitudes().adjoint();
  const Matrix pb = aligned.amplitudes() * aligned.amplitudes().adjoint();
  return (pa - pb).cwiseAbs().maxCoeff();
}

}  // namespace qtoken::qcore
