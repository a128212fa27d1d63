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

#include "qtoken/qcore/gates.hpp"

#include <cmath>

namespace qtoken::qcore {

std::string_view to_string(Qubit q) {
  switch (q) {
    case Qubit::A:
      return "A";
    case Qubit::M:
      return "M";
    case Qubit::P:
      return "P";
    case Qubit::Path:
      return "Path";
  }
  return "?";
}

namespace gates {

Matrix identity(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return Matrix::Identity(dim, dim);
}

Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  return h;
}

Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Matrix pauli_y() {
  Matrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  return y;
}

Matrix pauli_z() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

Matrix phase(double theta) {
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 1) = std::polar(1.0, theta);
  return p;
}

Matrix ry(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  Matrix r(2, 2);
  r << c, -s, s, c;
  return r;
}

Matrix cnot() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 3) = 1.0;
  c(3, 2) = 1.0;
  return c;
}

Matrix swap() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace gates
}  // namespace qtoken::qcore
