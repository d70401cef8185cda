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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace matorder {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace linalg {

// Spectrum of a hermitian matrix, eigenvalues ascending.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

Matrix hermitian_part(const Matrix& m);
double hermiticity_defect(const Matrix& m);

Eigensystem eigh(const Matrix& h);
double min_eigenvalue(const Matrix& h);
// Lowest eigenvalue together with the lowest-index eigenvector for it.
std::pair<double, Vector> min_eigenpair(const Matrix& h);
std::pair<double, Vector> max_eigenpair(const Matrix& h);

// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
Matrix psd_part(const Matrix& h);
// Spectral projection onto eigenvalues > threshold.
Matrix spectral_projector(const Matrix& h, double threshold);
// Inverse square root of a positive definite hermitian matrix.
Matrix inverse_sqrt(const Matrix& h);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(int n);

// Operators on C^{d1} (x) C^{d2}, row index i*d2 + j.
Matrix partial_trace_first(const Matrix& m, int d1, int d2);
Matrix partial_trace_second(const Matrix& m, int d1, int d2);
Matrix partial_transpose_first(const Matrix& m, int d1, int d2);
Matrix partial_transpose_second(const Matrix& m, int d1, int d2);

// w[i*cols + j] <-> W(i, j).
Matrix unvec(const Vector& w, int rows, int cols);
Vector vec(const Matrix& w);

// Orthonormal basis of the column space (thin Householder QR).
Matrix orthonormal_columns(const Matrix& m);

// Re Tr(a^* b).
double frobenius_inner(const Matrix& a, const Matrix& b);

}  // namespace linalg
}  // namespace matorder
