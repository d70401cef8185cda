// Copyright 2026 The matorder Authors
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

// Reference computations for the tests. Written with plain loops and the
// general (non-hermitian) eigensolver so they share no code with the library.

#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "matorder/linalg.hpp"

namespace oracle {

using matorder::Complex;
using matorder::Matrix;
using matorder::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int r = 0; r < b.rows(); ++r)
        for (int s = 0; s < b.cols(); ++s)
          out(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return out;
}

inline double min_eig(const Matrix& h) {
  Eigen::ComplexEigenSolver<Matrix> es(h, false);
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < es.eigenvalues().size(); ++i) m = std::min(m, es.eigenvalues()(i).real());
  return m;
}

inline double max_eig(const Matrix& h) { return -min_eig(-h); }

// Swap on C^d (x) C^d.
inline Matrix swap(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

// |phi+><phi+| on C^d (x) C^d, normalized.
inline Matrix max_entangled(int d) {
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

inline Vector qubit(double theta, double phi) {
  Vector v(2);
  v << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
  return v;
}

// Min of <u (x) v, x u (x) v> over a Bloch-sphere grid on both qubits.
inline double product_min_qubits(const Matrix& x, int steps = 24) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vector> grid;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; b < 2 * steps; ++b)
      grid.push_back(qubit(M_PI * a / steps, M_PI * b / steps));
  for (const Vector& u : grid)
    for (const Vector& v : grid) {
      Vector w(4);
      for (int i = 0; i < 2; ++i)
        for (int s = 0; s < 2; ++s) w(i * 2 + s) = u(i) * v(s);
      best = std::min(best, (w.adjoint() * x * w)(0, 0).real());
    }
  return best;
}

inline double frob(const Matrix& a) {
  double s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline Matrix diag(std::initializer_list<double> xs) {
  Matrix m = Matrix::Zero(xs.size(), xs.size());
  int i = 0;
  for (double x : xs) { m(i, i) = x; ++i; }
  return m;
}

}  // namespace oracle
