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

#include "qtoken/qcore/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

#include "qtoken/qcore/gates.hpp"
#include "qtoken/qcore/measure.hpp"

namespace qtoken::qcore {

KrausChannel::KrausChannel(std::vector<Matrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) {
    throw QuantumError("channel needs at least one Kraus operator");
  }
  const auto dim = operators_.front().rows();
  std::size_t k = 0;
  while ((Eigen::Index{1} << k) < dim) {
    ++k;
  }
  if ((Eigen::Index{1} << k) != dim) {
    throw QuantumError("Kraus operator dimension is not a power of two");
  }
  for (const Matrix& op : operators_) {
    if (op.rows() != dim || op.cols() != dim) {
      throw QuantumError("Kraus operators must share one square dimension");
    }
  }
  num_qubits_ = k;
  if (completeness_defect() > kTolerance) {
    throw QuantumError("Kraus operators are not complete (sum K^dagger K != I)");
  }
}

double KrausChannel::completeness_defect() const {
  const auto dim = operators_.front().rows();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& op : operators_) {
    sum += op.adjoint() * op;
  }
  return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::identity(std::size_t num_qubits) { return KrausChannel({gates::identity(num_qubits)}); }

KrausChannel KrausChannel::phase_flip(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw QuantumError("phase-flip probability outside [0, 1]");
  }
  return KrausChannel({std::sqrt(1.0 - p) * gates::identity(1), std::sqrt(p) * gates::pauli_z()});
}

KrausChannel KrausChannel::two_qubit_depolarizing(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw QuantumError("depolarizing fidelity outside [0, 1]");
  }
  const std::array<Matrix, 4> paulis{gates::identity(1), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  std::vector<Matrix> ops;
  ops.reserve(16);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const double w = (a == 0 && b == 0) ? f + (1.0 - f) / 16.0 : (1.0 - f) / 16.0;
      ops.push_back(std::sqrt(w) * Eigen::kroneckerProduct(paulis[a], paulis[b]).eval());
    }
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, std::span<const Qubit> targets) {
  if (targets.size() != ch.num_qubits()) {
    throw QuantumError("channel arity does not match the number of targets");
  }
  const auto dim = rho.entries().rows();
  Matrix out = Matrix::Zero(dim, dim);
  for (const Matrix& op : ch.operators()) {
    const Matrix full = embed(op, rho.labels(), targets);
    out += full * rho.entries() * full.adjoint();
  }
  return make_unchecked(rho.labels(), std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, std::initializer_list<Qubit> targets) {
  return apply_channel(rho, ch, std::span<const Qubit>(targets.begin(), targets.size()));
}

StateVector sample_channel(const StateVector& state, const KrausChannel& ch, std::span<const Qubit> targets,
                           Rng& rng) {
  if (targets.size() != ch.num_qubits()) {
    throw QuantumError("channel arity does not match the number of targets");
  }
  if (ch.operators().size() == 1) {
    const Vector v = embed(ch.operators().front(), state.labels(), targets) * state.amplitudes();
    return make_unchecked(state.labels(), Vector(v / v.norm()));
  }
  const double u = uniform01(rng);
  double acc = 0.0;
  Vector chosen;
  for (const Matrix& op : ch.operators()) {
    Vector v = embed(op, state.labels(), targets) * state.amplitudes();
    const double w = v.squaredNorm();
    if (w <= 0.0) {
      continue;
    }
    acc += w;
    chosen = std::move(v);
    if (u < acc) {
      break;
    }
  }
  return make_unchecked(state.labels(), Vector(chosen / chosen.norm()));
}

StateVector sample_channel(const StateVector& state, const KrausChannel& ch, std::initializer_list<Qubit> targets,
                           Rng& rng) {
  return sample_channel(state, ch, std::span<const Qubit>(targets.begin(), targets.size()), rng);
}

}  // namespace qtoken::qcore
