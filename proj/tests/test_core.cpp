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

#include <gtest/gtest.h>

#include "matorder/core.hpp"
#include "matorder/random.hpp"
#include "oracles.hpp"

namespace matorder {
namespace {

ConcreteSystem diagonal_m2(int k) {
  BlockSpace s = BlockSpace::single(2);
  return ConcreteSystem(s, {HermitianElement::from_dense(s, oracle::pauli_z())}, k);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(BlockSpace, OffsetsAndDims) {
  BlockSpace s({2, 1, 3});
  EXPECT_EQ(s.total_dim(), 6);
  EXPECT_EQ(s.block_offset(2), 3);
  EXPECT_EQ(s.algebra_dim(), 4 + 1 + 9);
  EXPECT_EQ(s.max_block_dim(), 3);
  EXPECT_EQ(s.block_of(3), 2);
}

TEST(BlockSpace, RejectsEmpty) {
  EXPECT_EQ(code_of([] { BlockSpace s(std::vector<int>{}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BlockSpace s({2, 0}); }), ErrorCode::kInvalidArgument);
}

TEST(HermitianElement, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { HermitianElement::from_dense(BlockSpace::single(2), m); }),
            ErrorCode::kNonHermitian);
}

TEST(HermitianElement, RejectsOffBlock) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  EXPECT_EQ(code_of([&] { HermitianElement::from_dense(BlockSpace({1, 1}), m); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ConcreteSystem, UnitPrepended) {
  ConcreteSystem v = diagonal_m2(1);
  EXPECT_EQ(v.dim(), 2);
  EXPECT_LT(oracle::frob(v.basis()[0].dense() - Matrix::Identity(2, 2)), 1e-14);
}

TEST(ConcreteSystem, EmptyBasisAndBadK) {
  BlockSpace s = BlockSpace::single(2);
  EXPECT_EQ(code_of([&] { ConcreteSystem v(s, {}, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { ConcreteSystem::full(s, 0); }), ErrorCode::kInvalidArgument);
}

TEST(ConcreteSystem, DependentBasisRejected) {
  BlockSpace s = BlockSpace::single(2);
  HermitianElement z = HermitianElement::from_dense(s, oracle::pauli_z());
  EXPECT_EQ(code_of([&] { ConcreteSystem v(s, {z, z * 2.0}, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(ConcreteSystem, FullSpans) {
  ConcreteSystem v = ConcreteSystem::full(BlockSpace({2, 1}), 2);
  EXPECT_TRUE(v.spans_ambient());
  EXPECT_EQ(v.dim(), 5);
  EXPECT_TRUE(v.k_minimal_realization());
  EXPECT_FALSE(v.with_k(1).k_minimal_realization());
}

TEST(ProjectToSpan, UnitAndZero) {
  ConcreteSystem v = diagonal_m2(1);
  BlockSpace s = v.ambient();
  SpanProjection e = project_to_span(HermitianElement::identity(s), v);
  EXPECT_TRUE(e.in_span);
  EXPECT_LT(oracle::frob(e.projection - Matrix::Identity(2, 2)), 1e-12);
  SpanProjection z = project_to_span(HermitianElement::zero(s), v);
  EXPECT_TRUE(z.in_span);
  EXPECT_LT(oracle::frob(z.projection), 1e-14);
}

TEST(ProjectToSpan, PauliXResidual) {
  ConcreteSystem v = diagonal_m2(1);
  SpanProjection p =
      project_to_span(HermitianElement::from_dense(v.ambient(), oracle::pauli_x()), v);
  EXPECT_FALSE(p.in_span);
  // X is trace-orthogonal to I and Z, so the whole of X is residual.
  EXPECT_NEAR(p.residual, std::sqrt(2.0), 1e-12);
}

TEST(ProjectToSpan, AmbientMismatch) {
  ConcreteSystem v = diagonal_m2(1);
  EXPECT_EQ(code_of([&] { project_to_span(HermitianElement::identity(BlockSpace::single(3)), v); }),
            ErrorCode::kAmbientMismatch);
}

TEST(LevelElement, OutOfSpanEntry) {
  SystemPtr v = make_system(diagonal_m2(1));
  Matrix flat = Matrix::Zero(2, 2);
  flat(0, 1) = flat(1, 0) = 1.0;
  EXPECT_EQ(code_of([&] { LevelElement x(v, 1, flat); }), ErrorCode::kOutOfSpan);
  EXPECT_EQ(code_of([&] { LevelElement x(v, 0, Matrix(0, 0)); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { LevelElement x(v, 2, flat); }), ErrorCode::kDimensionMismatch);
}

TEST(LevelElement, EntriesRoundTrip) {
  SystemPtr v = make_system(ConcreteSystem::full(BlockSpace::single(2), 2));
  Rng rng(3);
  Matrix h = rng.hermitian(4);
  LevelElement x(v, 2, h);
  LevelElement y = LevelElement::from_entries(
      v, {{x.entry(0, 0), x.entry(0, 1)}, {x.entry(1, 0), x.entry(1, 1)}});
  EXPECT_LT(oracle::frob(x.flat() - y.flat()), 1e-14);
  // entry (i,j) is the D x D block at rows i*D, cols j*D
  EXPECT_EQ(x.entry(1, 0)(1, 1), h(3, 1));
}

TEST(Compress, IdentityAndZero) {
  SystemPtr v = make_system(ConcreteSystem::full(BlockSpace::single(2), 2));
  Rng rng(4);
  LevelElement x(v, 2, rng.hermitian(4));
  EXPECT_LT(oracle::frob(compress(x, Matrix::Identity(2, 2)).flat() - x.flat()), 1e-14);
  EXPECT_LT(oracle::frob(compress(x, Matrix::Zero(2, 2)).flat()), 1e-14);
}

TEST(Compress, DiagonalAverage) {
  SystemPtr v = make_system(ConcreteSystem::full(BlockSpace::single(1), 1));
  const double a = 0.7, b = -1.9;
  LevelElement x(v, 2, oracle::diag({a, b}));
  Matrix alpha(2, 1);
  alpha << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  LevelElement c = compress(x, alpha);
  EXPECT_EQ(c.level(), 1);
  EXPECT_NEAR(c.flat()(0, 0).real(), (a + b) / 2, 1e-14);
}

TEST(Compress, Composition) {
  SystemPtr v = make_system(ConcreteSystem::full(BlockSpace({2, 1}), 2));
  Rng rng(5);
  Matrix h = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Matrix b = v->ambient().mask(rng.gaussian_matrix(3, 3));
      h.block(3 * i, 3 * j, 3, 3) += b;
      h.block(3 * j, 3 * i, 3, 3) += b.adjoint();
    }
  LevelElement x(v, 3, h);
  Matrix a = rng.gaussian_matrix(3, 2), b = rng.gaussian_matrix(2, 2);
  Matrix lhs = compress(compress(x, a), b).flat();
  Matrix rhs = compress(x, a * b).flat();
  EXPECT_LT(oracle::frob(lhs - rhs), 1e-10 * (1 + oracle::frob(lhs)));
  // oracle: (a (x) I)^* x (a (x) I) with a hand-rolled kron
  Matrix big = oracle::kron(a, Matrix::Identity(3, 3));
  EXPECT_LT(oracle::frob(compress(x, a).flat() - big.adjoint() * h * big), 1e-10);
  EXPECT_EQ(code_of([&] { compress(x, Matrix::Identity(2, 2)); }), ErrorCode::kDimensionMismatch);
}

TEST(MinEigenvalue, Examples) {
  SystemPtr m1 = make_system(ConcreteSystem::full(BlockSpace::single(1), 1));
  EXPECT_NEAR(min_eigenvalue(LevelElement::identity(m1, 3)), 1.0, 1e-14);
  Matrix j2 = Matrix::Ones(2, 2);
  EXPECT_NEAR(min_eigenvalue(LevelElement(m1, 2, j2)), 0.0, 1e-14);
  SystemPtr m2 = make_system(ConcreteSystem::full(BlockSpace::single(2), 1));
  EXPECT_NEAR(min_eigenvalue(LevelElement(m2, 2, oracle::swap(2))), -1.0, 1e-14);
}

TEST(MinEigenvalue, AgreesWithOracle) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Matrix h = rng.hermitian(5);
    HermitianElement x = HermitianElement::from_dense(BlockSpace::single(5), h);
    EXPECT_NEAR(min_eigenvalue(x), oracle::min_eig(h), 1e-10);
  }
}

TEST(DirectSum, Examples) {
  HermitianElement a(BlockSpace::single(1), {oracle::diag({1})});
  HermitianElement b(BlockSpace::single(1), {oracle::diag({2})});
  HermitianElement s = direct_sum({a, b});
  EXPECT_EQ(s.space().block_dims(), (std::vector<int>{1, 1}));
  EXPECT_LT(oracle::frob(s.dense() - oracle::diag({1, 2})), 1e-15);
  EXPECT_LT(oracle::frob(direct_sum({a}).dense() - a.dense()), 1e-15);
  HermitianElement z = direct_sum({a, HermitianElement::zero(BlockSpace::single(2))});
  EXPECT_LT(oracle::frob(z.dense() - oracle::diag({1, 0, 0})), 1e-15);
}

TEST(Levels, PadAndAmplify) {
  SystemPtr v = make_system(ConcreteSystem::full(BlockSpace::single(2), 2));
  Rng rng(7);
  LevelElement x(v, 1, rng.hermitian(2));
  LevelElement a = amplify(x, 3);
  EXPECT_EQ(a.level(), 3);
  EXPECT_LT(oracle::frob(a.flat() - oracle::kron(Matrix::Identity(3, 3), x.flat())), 1e-15);
  LevelElement p = pad_level(x, 2);
  EXPECT_NEAR(min_eigenvalue(p), std::min(0.0, min_eigenvalue(x)), 1e-12);
  EXPECT_EQ(code_of([&] { pad_level(a, 1); }), ErrorCode::kDimensionMismatch);
}

// Properness: x and -x both positive forces x = 0.
TEST(Properties, ConeIsProper) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    Matrix h = rng.hermitian(4);
    if (t % 5 == 0) h.setZero();
    const bool both = oracle::min_eig(h) >= -1e-12 && oracle::min_eig(-h) >= -1e-12;
    EXPECT_EQ(both, oracle::frob(h) < 1e-12);
  }
}

}  // namespace
}  // namespace matorder
