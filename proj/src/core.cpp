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

#include "matorder/core.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "matorder/parallel.hpp"

namespace matorder {

namespace {

double scale_of(const Matrix& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_hermitian(const Matrix& m, const char* what) {
  if (linalg::hermiticity_defect(m) > tolerances().herm_tol * scale_of(m)) {
    throw Error(ErrorCode::kNonHermitian, std::string(what) + " is not hermitian");
  }
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("MATORDER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// ---------------------------------------------------------------- BlockSpace

BlockSpace::BlockSpace(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a BlockSpace needs at least one block");
  }
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    if (d < 1) {
      throw Error(ErrorCode::kInvalidArgument, "block dimensions must be positive");
    }
    offsets_.push_back(total_);
    total_ += d;
  }
}

int BlockSpace::max_block_dim() const {
  return *std::max_element(dims_.begin(), dims_.end());
}

int BlockSpace::algebra_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0,
                         [](int acc, int d) { return acc + d * d; });
}

Matrix BlockSpace::assemble(const std::vector<Matrix>& blocks) const {
  if (static_cast<int>(blocks.size()) != num_blocks()) {
    throw Error(ErrorCode::kDimensionMismatch, "wrong number of blocks");
  }
  Matrix dense = Matrix::Zero(total_, total_);
  for (int i = 0; i < num_blocks(); ++i) {
    if (blocks[i].rows() != dims_[i] || blocks[i].cols() != dims_[i]) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "block " + std::to_string(i) + " has the wrong size");
    }
    dense.block(offsets_[i], offsets_[i], dims_[i], dims_[i]) = blocks[i];
  }
  return dense;
}

Matrix BlockSpace::block(const Matrix& dense, int i) const {
  return dense.block(offsets_[i], offsets_[i], dims_[i], dims_[i]);
}

int BlockSpace::block_of(int index) const {
  int b = 0;
  while (b + 1 < num_blocks() && offsets_[b + 1] <= index) ++b;
  return b;
}

double BlockSpace::off_block_norm(const Matrix& dense) const {
  return (dense - mask(dense)).norm();
}

Matrix BlockSpace::mask(const Matrix& dense) const {
  Matrix out = Matrix::Zero(dense.rows(), dense.cols());
  for (int i = 0; i < num_blocks(); ++i) {
    out.block(offsets_[i], offsets_[i], dims_[i], dims_[i]) =
        dense.block(offsets_[i], offsets_[i], dims_[i], dims_[i]);
  }
  return out;
}

BlockSpace concatenate(const BlockSpace& a, const BlockSpace& b) {
  std::vector<int> dims = a.block_dims();
  dims.insert(dims.end(), b.block_dims().begin(), b.block_dims().end());
  return BlockSpace(std::move(dims));
}

// ---------------------------------------------------------- HermitianElement

HermitianElement::HermitianElement(BlockSpace space, const std::vector<Matrix>& blocks)
    : space_(std::move(space)) {
  Matrix dense = space_.assemble(blocks);
  require_hermitian(dense, "element");
  dense_ = linalg::hermitian_part(dense);
}

HermitianElement HermitianElement::from_dense(BlockSpace space, const Matrix& dense) {
  if (dense.rows() != space.total_dim() || dense.cols() != space.total_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "dense element has the wrong size");
  }
  if (space.off_block_norm(dense) > tolerances().herm_tol * scale_of(dense)) {
    throw Error(ErrorCode::kDimensionMismatch, "element is not block diagonal");
  }
  require_hermitian(dense, "element");
  Matrix clean = linalg::hermitian_part(space.mask(dense));
  return HermitianElement(Trusted{}, std::move(space), std::move(clean));
}

HermitianElement HermitianElement::identity(const BlockSpace& space) {
  return HermitianElement(Trusted{}, space, linalg::identity(space.total_dim()));
}

HermitianElement HermitianElement::zero(const BlockSpace& space) {
  return HermitianElement(Trusted{}, space,
                          Matrix::Zero(space.total_dim(), space.total_dim()));
}

std::vector<Matrix> HermitianElement::blocks() const {
  std::vector<Matrix> out;
  for (int i = 0; i < space_.num_blocks(); ++i) out.push_back(block(i));
  return out;
}

double HermitianElement::inner(const HermitianElement& other) const {
  if (!(space_ == other.space_)) {
    throw Error(ErrorCode::kAmbientMismatch, "elements live in different spaces");
  }
  return (dense_ * other.dense_).trace().real();
}

HermitianElement HermitianElement::operator+(const HermitianElement& o) const {
  if (!(space_ == o.space_)) throw Error(ErrorCode::kAmbientMismatch, "sum");
  return HermitianElement(Trusted{}, space_, dense_ + o.dense_);
}

HermitianElement HermitianElement::operator-(const HermitianElement& o) const {
  if (!(space_ == o.space_)) throw Error(ErrorCode::kAmbientMismatch, "difference");
  return HermitianElement(Trusted{}, space_, dense_ - o.dense_);
}

HermitianElement HermitianElement::operator-() const {
  return HermitianElement(Trusted{}, space_, -dense_);
}

HermitianElement HermitianElement::operator*(double s) const {
  return HermitianElement(Trusted{}, space_, s * dense_);
}

// ------------------------------------------------------------ ConcreteSystem

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns the
// residual norm of `m` before normalization.
double orthogonalize_against(Matrix& m, const std::vector<Matrix>& ortho) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Matrix& o : ortho) m -= (o.adjoint() * m).trace() * o;
  }
  return m.norm();
}

constexpr double kIndependenceThreshold = 1e-8;

}  // namespace

ConcreteSystem::ConcreteSystem(BlockSpace ambient, std::vector<HermitianElement> basis,
                               int k)
    : ambient_(std::move(ambient)), k_(k) {
  if (k_ < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (basis.empty()) throw Error(ErrorCode::kInvalidArgument, "empty basis");
  for (const auto& b : basis) {
    if (!(b.space() == ambient_)) {
      throw Error(ErrorCode::kAmbientMismatch, "basis element outside the ambient");
    }
  }

  {
    std::vector<Matrix> given;
    for (const auto& b : basis) {
      Matrix m = b.dense();
      const double scale = m.norm();
      const double residual = orthogonalize_against(m, given);
      if (scale == 0.0 || residual <= kIndependenceThreshold * scale) {
        throw Error(ErrorCode::kInvalidArgument, "basis is linearly dependent");
      }
      given.push_back(m / residual);
    }
  }

  const HermitianElement unit = HermitianElement::identity(ambient_);
  const bool unit_first = (basis.front().dense() - unit.dense()).norm() <=
                          tolerances().span_tol;
  if (!unit_first) basis.insert(basis.begin(), unit);

  // The unit may now make one later element redundant; drop exactly that one.
  bool dropped = unit_first;
  for (const auto& b : basis) {
    Matrix m = b.dense();
    const double scale = m.norm();
    const double residual = orthogonalize_against(m, ortho_);
    if (scale == 0.0 || residual <= kIndependenceThreshold * scale) {
      if (!dropped && !ortho_.empty()) {
        dropped = true;
        continue;
      }
      throw Error(ErrorCode::kInvalidArgument, "basis is linearly dependent");
    }
    ortho_.push_back(linalg::hermitian_part(m / residual));
    basis_.push_back(b);
  }

  const int d = dim();
  RealMatrix gram(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) gram(i, j) = basis_[i].inner(basis_[j]);
  }
  gram_inverse_ = gram.inverse();
}

ConcreteSystem ConcreteSystem::full(BlockSpace ambient, int k) {
  std::vector<HermitianElement> basis;
  basis.push_back(HermitianElement::identity(ambient));
  const int total = ambient.total_dim();
  bool skipped_diagonal = false;
  for (int b = 0; b < ambient.num_blocks(); ++b) {
    const int off = ambient.block_offset(b);
    const int d = ambient.block_dims()[b];
    for (int s = 0; s < d; ++s) {
      if (!skipped_diagonal) {
        skipped_diagonal = true;  // the unit already spans one diagonal direction
        continue;
      }
      Matrix m = Matrix::Zero(total, total);
      m(off + s, off + s) = 1.0;
      basis.push_back(HermitianElement::from_dense(ambient, m));
    }
    for (int s = 0; s < d; ++s) {
      for (int t = s + 1; t < d; ++t) {
        Matrix re = Matrix::Zero(total, total);
        re(off + s, off + t) = re(off + t, off + s) = M_SQRT1_2;
        Matrix im = Matrix::Zero(total, total);
        im(off + s, off + t) = Complex(0.0, -M_SQRT1_2);
        im(off + t, off + s) = Complex(0.0, M_SQRT1_2);
        basis.push_back(HermitianElement::from_dense(ambient, re));
        basis.push_back(HermitianElement::from_dense(ambient, im));
      }
    }
  }
  return ConcreteSystem(std::move(ambient), std::move(basis), k);
}

SpanProjection ConcreteSystem::project(const Matrix& m) const {
  if (m.rows() != ambient_.total_dim() || m.cols() != ambient_.total_dim()) {
    throw Error(ErrorCode::kAmbientMismatch, "matrix does not live in the ambient");
  }
  SpanProjection out;
  out.projection = Matrix::Zero(m.rows(), m.cols());
  for (const Matrix& o : ortho_) out.projection += (o * m).trace() * o;
  out.residual = (m - out.projection).norm();
  out.in_span = out.residual <= tolerances().span_tol * std::max(1.0, m.norm());
  return out;
}

double ConcreteSystem::span_residual(const Matrix& m) const {
  return project(m).residual;
}

Vector ConcreteSystem::coordinates(const Matrix& m) const {
  Vector rhs(dim());
  for (int i = 0; i < dim(); ++i) rhs(i) = (basis_[i].dense() * m).trace();
  return gram_inverse_.cast<Complex>() * rhs;
}

ConcreteSystem ConcreteSystem::with_k(int k) const {
  ConcreteSystem copy = *this;
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  copy.k_ = k;
  return copy;
}

SystemPtr make_system(ConcreteSystem system) {
  return std::make_shared<const ConcreteSystem>(std::move(system));
}

// -------------------------------------------------------------- LevelElement

LevelElement::LevelElement(SystemPtr system, int n, const Matrix& flat)
    : system_(std::move(system)), n_(n) {
  if (!system_) throw Error(ErrorCode::kInvalidArgument, "null system");
  if (n_ < 1) throw Error(ErrorCode::kInvalidArgument, "level must be positive");
  const int d = system_->ambient().total_dim();
  if (flat.rows() != n_ * d || flat.cols() != n_ * d) {
    throw Error(ErrorCode::kDimensionMismatch, "flattened matrix has the wrong size");
  }
  require_hermitian(flat, "level element");
  flat_ = linalg::hermitian_part(flat);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const Matrix e = flat_.block(i * d, j * d, d, d);
      if (!system_->project(e).in_span) {
        throw Error(ErrorCode::kOutOfSpan, "entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") is outside V");
      }
    }
  }
}

LevelElement LevelElement::from_entries(SystemPtr system,
                                        const std::vector<std::vector<Matrix>>& entries) {
  const int n = static_cast<int>(entries.size());
  if (!system) throw Error(ErrorCode::kInvalidArgument, "null system");
  const int d = system->ambient().total_dim();
  Matrix flat = Matrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "entries are not square");
    }
    for (int j = 0; j < n; ++j) {
      if (entries[i][j].rows() != d || entries[i][j].cols() != d) {
        throw Error(ErrorCode::kDimensionMismatch, "entry has the wrong size");
      }
      flat.block(i * d, j * d, d, d) = entries[i][j];
    }
  }
  return LevelElement(std::move(system), n, flat);
}

LevelElement LevelElement::identity(SystemPtr system, int n) {
  const int d = system->ambient().total_dim();
  return trusted(std::move(system), n, linalg::identity(n * d));
}

LevelElement LevelElement::zero(SystemPtr system, int n) {
  const int d = system->ambient().total_dim();
  return trusted(std::move(system), n, Matrix::Zero(n * d, n * d));
}

LevelElement LevelElement::from_element(SystemPtr system, const HermitianElement& x) {
  if (!(x.space() == system->ambient())) {
    throw Error(ErrorCode::kAmbientMismatch, "element outside the system ambient");
  }
  return LevelElement(std::move(system), 1, x.dense());
}

LevelElement LevelElement::trusted(SystemPtr system, int n, Matrix flat) {
  if (!system) throw Error(ErrorCode::kInvalidArgument, "null system");
  return LevelElement(Trusted{}, std::move(system), n, linalg::hermitian_part(flat));
}

Matrix LevelElement::entry(int i, int j) const {
  const int d = ambient_dim();
  return flat_.block(i * d, j * d, d, d);
}

LevelElement LevelElement::operator+(const LevelElement& o) const {
  if (o.n_ != n_ || o.flat_.rows() != flat_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "level mismatch");
  }
  return trusted(system_, n_, flat_ + o.flat_);
}

LevelElement LevelElement::operator-(const LevelElement& o) const {
  if (o.n_ != n_ || o.flat_.rows() != flat_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "level mismatch");
  }
  return trusted(system_, n_, flat_ - o.flat_);
}

LevelElement LevelElement::operator*(double s) const {
  return trusted(system_, n_, s * flat_);
}

// ---------------------------------------------------------------- operations

SpanProjection project_to_span(const HermitianElement& x, const ConcreteSystem& v) {
  if (!(x.space() == v.ambient())) {
    throw Error(ErrorCode::kAmbientMismatch, "x and V do not share an ambient");
  }
  return v.project(x.dense());
}

HermitianElement projected_element(const SpanProjection& p, const BlockSpace& space) {
  return HermitianElement::from_dense(space, linalg::hermitian_part(p.projection));
}

LevelElement compress(const LevelElement& x, const Matrix& alpha) {
  if (alpha.rows() != x.level() || alpha.cols() < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "alpha must have n rows");
  }
  const Matrix a = linalg::kron(alpha, linalg::identity(x.ambient_dim()));
  return LevelElement::trusted(x.system(), static_cast<int>(alpha.cols()),
                               a.adjoint() * x.flat() * a);
}

double min_eigenvalue(const HermitianElement& x) {
  return linalg::min_eigenvalue(x.dense());
}

double min_eigenvalue(const LevelElement& x) {
  return linalg::min_eigenvalue(x.flat());
}

HermitianElement direct_sum(const std::vector<HermitianElement>& xs) {
  if (xs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty direct sum");
  BlockSpace space = xs.front().space();
  std::vector<Matrix> blocks = xs.front().blocks();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    space = concatenate(space, xs[i].space());
    for (const Matrix& b : xs[i].blocks()) blocks.push_back(b);
  }
  return HermitianElement(space, blocks);
}

LevelElement pad_level(const LevelElement& x, int m) {
  if (m < x.level()) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot pad to a lower level");
  }
  const int d = x.ambient_dim();
  Matrix flat = Matrix::Zero(m * d, m * d);
  flat.topLeftCorner(x.flat().rows(), x.flat().cols()) = x.flat();
  return LevelElement::trusted(x.system(), m, flat);
}

LevelElement amplify(const LevelElement& x, int m) {
  return LevelElement::trusted(x.system(), m * x.level(),
                               linalg::kron(linalg::identity(m), x.flat()));
}

}  // namespace matorder
