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

#include "matorder/conic.hpp"

#include <algorithm>
#include <cmath>

namespace matorder {

double choi_unitality_residual(const Matrix& choi, int d, int k) {
  return (linalg::partial_trace_first(choi, d, k) - linalg::identity(k)).norm();
}

Matrix apply_choi(const Matrix& choi, const Matrix& a, int d, int k) {
  Matrix out = Matrix::Zero(k, k);
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      if (a(s, t) != Complex(0.0)) out += a(s, t) * choi.block(s * k, t * k, k, k);
    }
  }
  return out;
}

ConicSolution minimize_over_ucp_choi(const Matrix& g, int d, int k,
                                     const ConicOptions& opts, const AdmmState* warm) {
  const int n = d * k;
  const double scale = std::max(g.norm(), 1e-12);
  const Matrix gs = g / scale;
  const Matrix id_k = linalg::identity(k);
  const Matrix id_d = linalg::identity(d);

  auto project_affine = [&](const Matrix& y) {
    const Matrix defect = linalg::partial_trace_first(y, d, k) - id_k;
    return Matrix(y - linalg::kron(id_d, defect) / static_cast<double>(d));
  };

  Matrix z = warm ? warm->z : Matrix(linalg::identity(n) / static_cast<double>(d));
  Matrix u = warm ? warm->u : Matrix(Matrix::Zero(n, n));
  const double rho = opts.rho;

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    const Matrix x = project_affine(z - u - gs / rho);
    const Matrix z_next = linalg::psd_part(x + u);
    u += x - z_next;
    const double primal = (x - z_next).norm();
    const double dual = rho * (z_next - z).norm();
    z = z_next;
    if (primal < opts.tol && dual < opts.tol) {
      ++it;
      break;
    }
  }

  // Exact repair: C = (I (x) S^{-1/2}) Z (I (x) S^{-1/2}) with S = Tr_1 Z is PSD
  // and unital whenever S is invertible.
  Matrix zr = z;
  Matrix s = linalg::partial_trace_first(zr, d, k);
  if (linalg::min_eigenvalue(s) < 1e-9) {
    zr = 0.999 * zr + 0.001 * linalg::identity(n) / static_cast<double>(d);
    s = linalg::partial_trace_first(zr, d, k);
  }
  const Matrix fix = linalg::kron(id_d, linalg::inverse_sqrt(s));
  ConicSolution out;
  out.point = linalg::hermitian_part(fix * zr * fix);
  out.objective = (g * out.point).trace().real();
  out.primal_residual = choi_unitality_residual(out.point, d, k);
  out.iterations = it;
  out.state = {z, u};
  return out;
}

ConicSolution minimize_over_trace_one_psd(
    const Matrix& h, const std::function<Matrix(const Matrix&)>& project_subspace,
    const ConicOptions& opts, const AdmmState* warm) {
  const int n = static_cast<int>(h.rows());
  const double scale = std::max(h.norm(), 1e-12);
  const Matrix hs = h / scale;
  const Matrix id = linalg::identity(n);

  auto project_affine = [&](const Matrix& y) {
    Matrix p = project_subspace(y);
    const double tr = p.trace().real();
    return Matrix(p - ((tr - 1.0) / n) * id);
  };

  Matrix z = warm ? warm->z : Matrix(id / static_cast<double>(n));
  Matrix u = warm ? warm->u : Matrix(Matrix::Zero(n, n));
  const double rho = opts.rho;
  Matrix x = z;

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    x = project_affine(z - u - hs / rho);
    const Matrix z_next = linalg::psd_part(x + u);
    u += x - z_next;
    const double primal = (x - z_next).norm();
    const double dual = rho * (z_next - z).norm();
    z = z_next;
    if (primal < opts.tol && dual < opts.tol) {
      ++it;
      break;
    }
  }

  // x lies in L with unit trace; shifting along the identity restores PSD.
  x = linalg::hermitian_part(x);
  const double shift = std::max(0.0, -linalg::min_eigenvalue(x));
  ConicSolution out;
  out.point = (x + shift * id) / (1.0 + n * shift);
  out.objective = (h * out.point).trace().real();
  out.primal_residual = (project_subspace(out.point) - out.point).norm() +
                        std::abs(out.point.trace().real() - 1.0);
  out.iterations = it;
  out.state = {z, u};
  return out;
}

}  // namespace matorder
