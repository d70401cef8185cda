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
#include <vector>

#include "matorder/conic.hpp"
#include "matorder/core.hpp"
#include "matorder/verdict.hpp"

namespace matorder {

// ---------------------------------------------------------------- k-minimal
//
// x in M_n(V) is k-minimal positive when every compression alpha^* x alpha by
// an n x k matrix is positive, i.e. <w, x w> >= 0 for every vector w of
// Schmidt rank <= k across C^n (x) C^D. Confirming this is hard in general, so
// MEMBER is only issued with a spectral proof and refutations always carry a
// witness.

// Algorithm A: alternating minimization over Schmidt-rank-k unit vectors.
// Each half step is an eigenproblem on a compression.
struct CompressionSearch {
  double value = 0.0;
  KMinWitness witness;
  long iterations = 0;
  int restarts = 0;
  bool exact = false;  // k >= min(n, D): a single eigenproblem is the answer
  std::vector<double> restart_values;
};
CompressionSearch kmin_search_compressions(const LevelElement& x, int k,
                                           const SearchOptions& opts);

// Algorithm B: alternating minimization of v^* phi_n(x) v over k-states phi
// (ADMM over the Choi set) and unit vectors v (eigenproblem).
struct KStateSearch {
  double value = 0.0;
  KStateWitness witness;
  long iterations = 0;
  int restarts = 0;
  double max_primal_residual = 0.0;
};
KStateSearch kmin_search_kstates(const LevelElement& x, int k, const SearchOptions& opts,
                                 const ConicOptions& conic = {});

Verdict is_kmin_member(const LevelElement& x, int k, double tol,
                       const SearchOptions& opts = {});

// Minimum of <w, x w> found over Schmidt-rank-k unit vectors. Deterministic in
// the seed and nonincreasing in the restart count.
double kmin_best_objective(const LevelElement& x, int k, int restarts,
                           std::uint64_t seed, int max_iters = 500);

// phi_n(x) for the map with Choi matrix `choi` (C^D (x) C^k).
Matrix apply_kstate(const Matrix& choi, const LevelElement& x, int k);

// ---------------------------------------------------------------- k-maximal

Verdict is_kmax_member(const LevelElement& x, int k, double tol,
                       const SearchOptions& opts = {});

// Tr(flat(x) flat(y)).
double dual_pairing(const LevelElement& x, const LevelElement& y);

// Sum of the k largest squared Schmidt coefficients of a unit vector in
// C^n (x) C^D: the largest overlap |<w, psi>|^2 with Schmidt-rank-k unit w.
double schmidt_weight(const Vector& psi, int n, int d, int k);

// ------------------------------------------------------ certificate checks
//
// Independent re-verification of the certificate a verdict carries.

bool check_kmin_witness(const KMinWitness& w, const LevelElement& x, int k, double tol);
bool check_kstate_witness(const KStateWitness& w, const LevelElement& x, double tol);
double kmax_slack(const KMaxDecomposition& dec, const LevelElement& x);
bool check_kmax_decomposition(const KMaxDecomposition& dec, const LevelElement& x,
                              int k, double tol);
bool check_dual_witness(const DualWitness& w, const LevelElement& x, int k, double tol);

// --------------------------------------------------------------- k-positivity

// Linear map V -> W given on basis coordinates: phi(b_j) = sum_i m(i, j) c_i.
class LinearMap {
 public:
  LinearMap(SystemPtr source, SystemPtr target, RealMatrix coefficients);

  const SystemPtr& source() const { return source_; }
  const SystemPtr& target() const { return target_; }
  const RealMatrix& coefficients() const { return coeffs_; }

  Matrix apply(const Matrix& a) const;  // a in span(V), complex coefficients
  Matrix apply_level(const Matrix& flat, int n) const;
  // Adjoint of apply_level for the trace pairing, landing in M_n(span V).
  Matrix adjoint_level(const Matrix& flat, int n) const;
  // Choi matrix over the ambient matrix units, sum E_st (x) phi(E_st) with
  // (s, t) in a common block. Requires V to span the ambient.
  Matrix ambient_choi() const;

 private:
  SystemPtr source_;
  SystemPtr target_;
  RealMatrix coeffs_;
  std::vector<Matrix> ortho_images_;  // phi(o_r) for the orthonormal basis of V
};

// The map given by a ambient matrix function, read off on V's basis.
LinearMap map_from_function(SystemPtr source, SystemPtr target,
                            const std::function<Matrix(const Matrix&)>& f);

Verdict is_map_k_positive(const LinearMap& phi, int k, double tol,
                          const SearchOptions& opts = {});

// x at level n <= k is in the level-n cone exactly when it is PSD.
bool level_positive(const LevelElement& x, int k);

}  // namespace matorder
