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

#include "matorder/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace matorder::linalg {

Matrix hermitian_part(const Matrix& m) {
  return 0.5 * (m + m.adjoint());
}

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigensystem eigh(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

std::pair<double, Vector> min_eigenpair(const Matrix& h) {
  auto es = eigh(h);
  return {es.values(0), es.vectors.col(0)};
}

std::pair<double, Vector> max_eigenpair(const Matrix& h) {
  auto es = eigh(h);
  const Eigen::Index last = es.values.size() - 1;
  return {es.values(last), es.vectors.col(last)};
}

Matrix psd_part(const Matrix& h) {
  auto es = eigh(h);
  RealVector clipped = es.values.cwiseMax(0.0);
  return es.vectors * clipped.cast<Complex>().asDiagonal() *
         es.vectors.adjoint();
}

Matrix spectral_projector(const Matrix& h, double threshold) {
  auto es = eigh(h);
  Matrix p = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > threshold) {
      p += es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
  }
  return p;
}

Matrix inverse_sqrt(const Matrix& h) {
  auto es = eigh(h);
  RealVector inv = es.values.array().rsqrt().matrix();
  return es.vectors * inv.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix partial_trace_first(const Matrix& m, int d1, int d2) {
  Matrix out = Matrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

Matrix partial_trace_second(const Matrix& m, int d1, int d2) {
  Matrix out(d1, d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    }
  }
  return out;
}

Matrix partial_transpose_first(const Matrix& m, int d1, int d2) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      out.block(i * d2, j * d2, d2, d2) = m.block(j * d2, i * d2, d2, d2);
    }
  }
  return out;
}

Matrix partial_transpose_second(const Matrix& m, int d1, int d2) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      out.block(i * d2, j * d2, d2, d2) =
          m.block(i * d2, j * d2, d2, d2).transpose();
    }
  }
  return out;
}

Matrix unvec(const Vector& w, int rows, int cols) {
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = w(i * cols + j);
  }
  return out;
}

Vector vec(const Matrix& w) {
  Vector out(w.size());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) out(i * w.cols() + j) = w(i, j);
  }
  return out;
}

Matrix orthonormal_columns(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

}  // namespace matorder::linalg
