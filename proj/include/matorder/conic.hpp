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

#include <functional>

#include "matorder/linalg.hpp"

namespace matorder {

// Fixed-budget ADMM (alternating projections onto an affine set and the PSD
// cone) used for the small conic subproblems of the certification searches.
// Returned points are repaired to be exactly feasible, so primal residuals are
// at round-off level regardless of how far the iteration got.
struct ConicOptions {
  int max_iters = 3000;
  double tol = 1e-10;
  double rho = 1.0;
};

struct AdmmState {
  Matrix z;
  Matrix u;
};

struct ConicSolution {
  Matrix point;
  double objective = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
  AdmmState state;  // for warm starts
};

// min Tr(G C) over Choi matrices C on C^D (x) C^k of unital completely
// positive maps M_D -> M_k: C >= 0 and Tr_1 C = I_k.
ConicSolution minimize_over_ucp_choi(const Matrix& g, int d, int k,
                                     const ConicOptions& opts = {},
                                     const AdmmState* warm = nullptr);

// min Tr(H c) over PSD c with Tr c = 1 inside the subspace L given by its
// orthogonal projector. L must contain the identity.
ConicSolution minimize_over_trace_one_psd(
    const Matrix& h, const std::function<Matrix(const Matrix&)>& project_subspace,
    const ConicOptions& opts = {}, const AdmmState* warm = nullptr);

// || Tr_1 C - I_k ||_F for a candidate Choi matrix.
double choi_unitality_residual(const Matrix& choi, int d, int k);

// The map a -> Tr_1[(a^T (x) I_k) C].
Matrix apply_choi(const Matrix& choi, const Matrix& a, int d, int k);

}  // namespace matorder
