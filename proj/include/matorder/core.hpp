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

#include <memory>
#include <vector>

#include "matorder/error.hpp"
#include "matorder/linalg.hpp"
#include "matorder/tolerances.hpp"

namespace matorder {

// A finite direct sum M_{d_1} (+) ... (+) M_{d_r}, realized as block-diagonal
// matrices of size total_dim.
class BlockSpace {
 public:
  explicit BlockSpace(std::vector<int> block_dims);
  static BlockSpace single(int d) { return BlockSpace({d}); }

  const std::vector<int>& block_dims() const { return dims_; }
  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int total_dim() const { return total_; }
  int block_offset(int i) const { return offsets_[i]; }
  int max_block_dim() const;
  // Complex dimension of the algebra, sum of d_i^2.
  int algebra_dim() const;

  Matrix assemble(const std::vector<Matrix>& blocks) const;
  Matrix block(const Matrix& dense, int i) const;
  // Index of the block containing row/column `index`.
  int block_of(int index) const;
  double off_block_norm(const Matrix& dense) const;
  Matrix mask(const Matrix& dense) const;  // zero the off-block entries

  bool operator==(const BlockSpace& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

BlockSpace concatenate(const BlockSpace& a, const BlockSpace& b);

// Self-adjoint element of a BlockSpace, stored densely.
class HermitianElement {
 public:
  HermitianElement(BlockSpace space, const std::vector<Matrix>& blocks);
  static HermitianElement from_dense(BlockSpace space, const Matrix& dense);
  static HermitianElement identity(const BlockSpace& space);
  static HermitianElement zero(const BlockSpace& space);

  const BlockSpace& space() const { return space_; }
  const Matrix& dense() const { return dense_; }
  Matrix block(int i) const { return space_.block(dense_, i); }
  std::vector<Matrix> blocks() const;

  double inner(const HermitianElement& other) const;  // Tr(ab)
  double norm() const { return dense_.norm(); }

  HermitianElement operator+(const HermitianElement& o) const;
  HermitianElement operator-(const HermitianElement& o) const;
  HermitianElement operator-() const;
  HermitianElement operator*(double s) const;

 private:
  struct Trusted {};
  HermitianElement(Trusted, BlockSpace space, Matrix dense)
      : space_(std::move(space)), dense_(std::move(dense)) {}

  BlockSpace space_;
  Matrix dense_;
};

inline HermitianElement operator*(double s, const HermitianElement& x) {
  return x * s;
}

// Result of projecting onto span(basis) under the trace inner product.
struct SpanProjection {
  Matrix projection;
  double residual = 0.0;
  bool in_span = false;
};

// A unital self-adjoint subspace of a BlockSpace. The first basis element is
// always the unit; an orthonormal copy of the basis is cached for projections.
class ConcreteSystem {
 public:
  // Prepends the unit when it is not in the span of `basis`; when it is in the
  // span but not first, the unit is moved to the front and the span is kept.
  ConcreteSystem(BlockSpace ambient, std::vector<HermitianElement> basis, int k);
  // The whole ambient algebra.
  static ConcreteSystem full(BlockSpace ambient, int k);

  const BlockSpace& ambient() const { return ambient_; }
  const std::vector<HermitianElement>& basis() const { return basis_; }
  const std::vector<Matrix>& orthonormal_basis() const { return ortho_; }
  int k() const { return k_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool spans_ambient() const { return dim() == ambient_.algebra_dim(); }
  // Every block of the ambient is at most k, so the induced structure is
  // k-minimal.
  bool k_minimal_realization() const { return ambient_.max_block_dim() <= k_; }

  SpanProjection project(const Matrix& m) const;
  double span_residual(const Matrix& m) const;
  // Complex coordinates of an element of the span against basis().
  Vector coordinates(const Matrix& m) const;

  ConcreteSystem with_k(int k) const;

 private:
  BlockSpace ambient_;
  std::vector<HermitianElement> basis_;
  int k_;
  std::vector<Matrix> ortho_;
  RealMatrix gram_inverse_;
};

using SystemPtr = std::shared_ptr<const ConcreteSystem>;

SystemPtr make_system(ConcreteSystem system);

// x in M_n(V), flattened to the (n * total_dim)-square matrix sum E_ij (x) x_ij.
class LevelElement {
 public:
  LevelElement(SystemPtr system, int n, const Matrix& flat);
  static LevelElement from_entries(SystemPtr system,
                                   const std::vector<std::vector<Matrix>>& entries);
  static LevelElement identity(SystemPtr system, int n);
  static LevelElement zero(SystemPtr system, int n);
  static LevelElement from_element(SystemPtr system, const HermitianElement& x);
  // Skips the span check; for results of operations that preserve M_n(V).
  static LevelElement trusted(SystemPtr system, int n, Matrix flat);

  const SystemPtr& system() const { return system_; }
  int level() const { return n_; }
  int ambient_dim() const { return system_->ambient().total_dim(); }
  const Matrix& flat() const { return flat_; }
  Matrix entry(int i, int j) const;

  LevelElement operator+(const LevelElement& o) const;
  LevelElement operator-(const LevelElement& o) const;
  LevelElement operator*(double s) const;

 private:
  struct Trusted {};
  LevelElement(Trusted, SystemPtr system, int n, Matrix flat)
      : system_(std::move(system)), n_(n), flat_(std::move(flat)) {}

  SystemPtr system_;
  int n_;
  Matrix flat_;
};

// Orthogonal projection of x onto span(V); in_span is false (OutOfSpan) when
// the residual exceeds span_tol.
SpanProjection project_to_span(const HermitianElement& x, const ConcreteSystem& v);
HermitianElement projected_element(const SpanProjection& p, const BlockSpace& space);

// (alpha (x) I)^* x (alpha (x) I) for alpha an n x m matrix.
LevelElement compress(const LevelElement& x, const Matrix& alpha);

double min_eigenvalue(const HermitianElement& x);
double min_eigenvalue(const LevelElement& x);

// Block concatenation over the concatenated BlockSpace.
HermitianElement direct_sum(const std::vector<HermitianElement>& xs);

// x (+) 0_{m-n} as an element of M_m(V).
LevelElement pad_level(const LevelElement& x, int m);
// I_m (x) x at level m * n.
LevelElement amplify(const LevelElement& x, int m);

}  // namespace matorder
