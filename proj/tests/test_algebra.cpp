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

#include "matorder/algebra.hpp"
#include "matorder/random.hpp"
#include "oracles.hpp"

namespace matorder {
namespace {

ConcreteSystem span_of(const BlockSpace& s, const std::vector<Matrix>& ms, int k = 2) {
  std::vector<HermitianElement> b;
  for (const Matrix& m : ms) b.push_back(HermitianElement::from_dense(s, m));
  return ConcreteSystem(s, b, k);
}

// Numerical rank by the general eigensolver on a hermitian Gram matrix.
int gram_rank(const GeneratedAlgebra& a, const Matrix& rho) {
  const int n = a.dim();
  Matrix g(n, n);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) g(l, m) = (rho * a.basis[l].adjoint() * a.basis[m]).trace();
  Eigen::ComplexEigenSolver<Matrix> es(g, false);
  double top = 0;
  for (int i = 0; i < n; ++i) top = std::max(top, std::abs(es.eigenvalues()(i)));
  int r = 0;
  for (int i = 0; i < n; ++i) r += std::abs(es.eigenvalues()(i)) > 1e-9 * top;
  return r;
}

TEST(Generate, Examples) {
  BlockSpace s = BlockSpace::single(2);
  EXPECT_EQ(generate_algebra(BlockSpace::single(2), {Matrix::Identity(2, 2)}).dim(), 1);
  GeneratedAlgebra x = generate_algebra(span_of(s, {oracle::pauli_x()}));
  EXPECT_EQ(x.dim(), 2);
  for (const Matrix& a : x.basis)
    for (const Matrix& b : x.basis) EXPECT_LT(oracle::frob(a * b - b * a), 1e-12);
  GeneratedAlgebra xz = generate_algebra(span_of(s, {oracle::pauli_x(), oracle::pauli_z()}));
  EXPECT_EQ(xz.dim(), 4);
  EXPECT_LT(xz.closure_defect(), 1e-10);
}

TEST(Generate, ClosedAndUnital) {
  Rng rng(41);
  BlockSpace s({2, 3});
  for (int t = 0; t < 5; ++t) {
    GeneratedAlgebra a = generate_algebra(s, {s.mask(rng.hermitian(5))});
    EXPECT_LT(a.closure_defect(), 1e-8);
    // the unit is reproduced from coordinates
    Vector c = a.coordinates(Matrix::Identity(5, 5));
    Matrix back = Matrix::Zero(5, 5);
    for (int j = 0; j < a.dim(); ++j) back += c(j) * a.basis[j];
    EXPECT_LT(oracle::frob(back - Matrix::Identity(5, 5)), 1e-10);
  }
}

TEST(Wedderburn, Diagonal) {
  BlockSpace s = BlockSpace::single(3);
  GeneratedAlgebra a = generate_algebra(span_of(s, {oracle::diag({1, 2, 3})}));
  BlockDecomposition d = wedderburn(a, 1);
  ASSERT_EQ(d.blocks.size(), 3u);
  for (const auto& b : d.blocks) {
    EXPECT_EQ(b.dim, 1);
    EXPECT_EQ(b.multiplicity, 1);
  }
  EXPECT_FALSE(d.exceeds_k);
}

TEST(Wedderburn, EmbeddedM2PlusM1) {
  Rng rng(42);
  Matrix u = rng.unitary(3);
  std::vector<Matrix> gens;
  for (const Matrix& g : {oracle::pauli_x(), oracle::pauli_z()}) {
    Matrix m = Matrix::Zero(3, 3);
    m.topLeftCorner(2, 2) = g;
    m(2, 2) = 0.37;
    gens.push_back(u * m * u.adjoint());
  }
  GeneratedAlgebra a = generate_algebra(span_of(BlockSpace::single(3), gens));
  EXPECT_EQ(a.dim(), 5);
  BlockDecomposition d = wedderburn(a, 2, 3);
  std::vector<std::pair<int, int>> got;
  for (const auto& b : d.blocks) got.emplace_back(b.dim, b.multiplicity);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}));
  EXPECT_LE(d.round_trip_error, 1e-7);
  // change of basis is unitary
  EXPECT_LT(oracle::frob(d.change_of_basis.adjoint() * d.change_of_basis - Matrix::Identity(3, 3)),
            1e-10);
}

TEST(Wedderburn, CommutativeX) {
  GeneratedAlgebra a = generate_algebra(span_of(BlockSpace::single(2), {oracle::pauli_x()}));
  BlockDecomposition d = wedderburn(a, 1);
  ASSERT_EQ(d.blocks.size(), 2u);
  // the new basis diagonalizes X
  Matrix c = d.change_of_basis.adjoint() * oracle::pauli_x() * d.change_of_basis;
  EXPECT_LT(std::abs(c(0, 1)), 1e-10);
}

TEST(Wedderburn, Multiplicity) {
  // M_2 (x) I_2 inside M_4
  std::vector<Matrix> gens = {oracle::kron(oracle::pauli_x(), Matrix::Identity(2, 2)),
                              oracle::kron(oracle::pauli_z(), Matrix::Identity(2, 2))};
  GeneratedAlgebra a = generate_algebra(span_of(BlockSpace::single(4), gens));
  EXPECT_EQ(a.dim(), 4);
  BlockDecomposition d = wedderburn(a, 2);
  ASSERT_EQ(d.blocks.size(), 1u);
  EXPECT_EQ(d.blocks[0].dim, 2);
  EXPECT_EQ(d.blocks[0].multiplicity, 2);
  int sum = 0;
  for (const auto& b : d.blocks) sum += b.dim * b.dim;
  EXPECT_EQ(sum, a.dim());
}

TEST(Wedderburn, RandomBlocksBoundedByK) {
  Rng rng(43);
  for (int t = 0; t < 6; ++t) {
    const int k = 2 + t % 2;
    BlockSpace s({k, 1, k});
    GeneratedAlgebra a = generate_algebra(
        span_of(s, {s.mask(rng.hermitian(s.total_dim())), s.mask(rng.hermitian(s.total_dim()))}, k));
    BlockDecomposition d = wedderburn(a, k, t);
    EXPECT_FALSE(d.exceeds_k);
    EXPECT_LE(d.round_trip_error, 1e-7);
    int dims = 0;
    for (const auto& b : d.blocks) dims += b.dim * b.dim;
    EXPECT_EQ(dims, a.dim());
  }
}

TEST(Gns, Examples) {
  BlockSpace s = BlockSpace::single(2);
  GeneratedAlgebra diag = generate_algebra(span_of(s, {oracle::pauli_z()}));
  EXPECT_EQ(gns(state_from_density(diag, oracle::diag({1, 0})), diag).dimension, 1);
  GeneratedAlgebra m2 = generate_algebra(span_of(s, {oracle::pauli_x(), oracle::pauli_z()}));
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  GNSRep tr = gns(state_from_density(m2, half), m2);
  EXPECT_EQ(tr.dimension, 4);
  EXPECT_EQ(tr.dimension, gram_rank(m2, half));
  Rng rng(44);
  Vector xi = rng.unit_vector(2);
  GNSRep v = gns(vector_state(m2, xi), m2);
  EXPECT_EQ(v.dimension, 2);
  EXPECT_EQ(v.dimension, gram_rank(m2, xi * xi.adjoint()));
  EXPECT_LE(v.multiplicativity_error, 1e-7);
  EXPECT_LE(v.state_error, 1e-8);
}

TEST(Gns, ReproducesState) {
  Rng rng(45);
  GeneratedAlgebra a = generate_algebra(BlockSpace({2, 1}), {BlockSpace({2, 1}).mask(rng.hermitian(3)),
                                                              BlockSpace({2, 1}).mask(rng.hermitian(3))});
  for (int t = 0; t < 5; ++t) {
    Matrix g = rng.gaussian_matrix(3, 3);
    Matrix rho = BlockSpace({2, 1}).mask(g * g.adjoint());
    rho /= rho.trace().real();
    Vector s = state_from_density(a, rho);
    GNSRep r = gns(s, a);
    for (int j = 0; j < a.dim(); ++j) {
      const Complex val = r.cyclic_vector.dot(r.rep_matrices[j] * r.cyclic_vector);
      EXPECT_NEAR(std::abs(val - s(j)), 0.0, 1e-8);
    }
    EXPECT_EQ(r.dimension, gram_rank(a, rho));
  }
}

TEST(Gns, RejectsNonState) {
  GeneratedAlgebra m2 = generate_algebra(
      span_of(BlockSpace::single(2), {oracle::pauli_x(), oracle::pauli_z()}));
  try {
    gns(state_from_density(m2, oracle::diag({1.5, -0.5})), m2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAState);
  }
}

TEST(PureStates, Bound) {
  BlockSpace s({2, 2});
  Rng rng(46);
  GeneratedAlgebra a = generate_algebra(
      span_of(s, {s.mask(rng.hermitian(4)), s.mask(rng.hermitian(4))}));
  PureStateReport r = check_pure_state_bound(a, 2, 10, 1);
  EXPECT_EQ(r.passed, 10);
  EXPECT_LE(r.max_dimension, 2);
  GeneratedAlgebra c3 = generate_algebra(span_of(BlockSpace::single(3), {oracle::diag({1, 2, 3})}, 1));
  PureStateReport one = check_pure_state_bound(c3, 1, 5, 2);
  for (int dim : one.dimensions) EXPECT_EQ(dim, 1);
  GeneratedAlgebra m3 = generate_algebra(BlockSpace::single(3), {rng.hermitian(3), rng.hermitian(3)});
  try {
    check_pure_state_bound(m3, 2, 5, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolated);
  }
}

}  // namespace
}  // namespace matorder
