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

#include "matorder/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "matorder/random.hpp"

namespace matorder {

namespace {

constexpr double kIndependence = 1e-9;

// Gram-Schmidt step against an orthonormal hermitian list; appends on success.
bool try_append(std::vector<Matrix>& basis, Matrix h) {
  const double scale = std::max(1.0, h.norm());
  for (int pass = 0; pass < 2; ++pass) {
    for (const Matrix& b : basis) h -= linalg::frobenius_inner(b, h) * b;
  }
  h = linalg::hermitian_part(h);
  const double r = h.norm();
  if (r <= kIndependence * scale) return false;
  basis.push_back(h / r);
  return true;
}

GeneratedAlgebra close_up(const BlockSpace& ambient, std::vector<Matrix> basis) {
  std::size_t done = 0;
  while (done < basis.size()) {
    const std::size_t frontier = basis.size();
    for (std::size_t j = done; j < frontier; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        const Matrix ab = basis[i] * basis[j];
        const Matrix ba = basis[j] * basis[i];
        try_append(basis, (ab + ba) / 2.0);
        try_append(basis, (ab - ba) / Complex(0.0, 2.0));
      }
    }
    done = frontier;
  }
  return GeneratedAlgebra{ambient, std::move(basis)};
}

Matrix null_space(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Commutant {x : [x, b] = 0 for every b}, as matrices.
std::vector<Matrix> commutant(const GeneratedAlgebra& a) {
  const int n = a.ambient.total_dim();
  const int nn = n * n;
  Matrix stacked(static_cast<Eigen::Index>(a.dim()) * nn, nn);
  const Matrix id = linalg::identity(n);
  for (int l = 0; l < a.dim(); ++l) {
    // vec with w[i * n + j]: vec(b x) = (b (x) I) vec(x), vec(x b) = (I (x) b^T) vec(x).
    stacked.middleRows(static_cast<Eigen::Index>(l) * nn, nn) =
        linalg::kron(a.basis[l], id) - linalg::kron(id, a.basis[l].transpose());
  }
  const Matrix ns = null_space(stacked, 1e-10);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) out.push_back(linalg::unvec(ns.col(c), n, n));
  return out;
}

}  // namespace

Vector GeneratedAlgebra::coordinates(const Matrix& a) const {
  Vector c(dim());
  for (int j = 0; j < dim(); ++j) c(j) = (basis[j] * a).trace();
  return c;
}

double GeneratedAlgebra::closure_defect() const {
  double worst = 0.0;
  for (const Matrix& x : basis) {
    for (const Matrix& y : basis) {
      const Matrix p = x * y;
      const Vector c = coordinates(p);
      Matrix r = p;
      for (int j = 0; j < dim(); ++j) r -= c(j) * basis[j];
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

GeneratedAlgebra generate_algebra(const ConcreteSystem& v) {
  return close_up(v.ambient(), v.orthonormal_basis());
}

GeneratedAlgebra generate_algebra(const BlockSpace& ambient, const std::vector<Matrix>& generators) {
  const int n = ambient.total_dim();
  std::vector<Matrix> basis;
  try_append(basis, linalg::identity(n));
  for (const Matrix& g : generators) {
    if (g.rows() != n || g.cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "generator does not match the ambient");
    }
    if (linalg::hermiticity_defect(g) > tolerances().herm_tol * std::max(1.0, g.norm())) {
      throw Error(ErrorCode::kNonHermitian, "generators must be hermitian");
    }
    try_append(basis, ambient.mask(g));
  }
  return close_up(ambient, std::move(basis));
}

BlockDecomposition wedderburn(const GeneratedAlgebra& a, int k, std::uint64_t seed,
                              int max_retries) {
  const int n = a.ambient.total_dim();
  const std::vector<Matrix> comm = commutant(a);
  BlockDecomposition out;
  out.k = k;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    out.attempts = attempt + 1;
    Rng rng(split_seed(seed, attempt));
    Matrix h = Matrix::Zero(n, n);
    Matrix x = Matrix::Zero(n, n);
    for (const Matrix& c : comm) {
      h += rng.gaussian() * (c + c.adjoint()) + rng.gaussian() * Complex(0.0, 1.0) * (c - c.adjoint());
      x += rng.complex_gaussian() * c;
    }
    h = linalg::hermitian_part(h);
    const auto es = linalg::eigh(h);
    const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());

    // Cluster the spectrum; each cluster should be an irreducible subspace.
    std::vector<Matrix> clusters;
    bool collided = false;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || es.values(i) - es.values(i - 1) > 1e-7 * scale) {
        clusters.push_back(es.vectors.middleCols(start, i - start));
        if (i < n && es.values(i) - es.values(i - 1) < 1e-4 * scale) collided = true;
        start = i;
      }
    }
    if (collided) continue;
    bool invariant = true;
    for (const Matrix& s : clusters) {
      const Matrix p = s * s.adjoint();
      const Matrix q = linalg::identity(n) - p;
      for (const Matrix& b : a.basis) {
        if ((q * b * p).norm() > 1e-8) invariant = false;
      }
    }
    if (!invariant) continue;

    // Group equivalent clusters and align each copy to its representative.
    const double xscale = std::max(1e-300, x.norm());
    std::vector<int> cls(clusters.size(), -1);
    std::vector<std::vector<Matrix>> classes;
    bool consistent = true;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (cls[c] >= 0) continue;
      cls[c] = static_cast<int>(classes.size());
      classes.push_back({clusters[c]});
      for (std::size_t o = c + 1; o < clusters.size(); ++o) {
        if (cls[o] >= 0 || clusters[o].cols() != clusters[c].cols()) continue;
        const Matrix m = clusters[o].adjoint() * x * clusters[c];
        if (m.norm() <= 1e-6 * xscale) continue;
        const int d = static_cast<int>(m.rows());
        const Matrix u = m * (std::sqrt(static_cast<double>(d)) / m.norm());
        if ((u.adjoint() * u - linalg::identity(d)).norm() > 1e-6) consistent = false;
        cls[o] = cls[c];
        classes.back().push_back(clusters[o] * u);
      }
    }
    if (!consistent) continue;

    out.blocks.clear();
    out.change_of_basis = Matrix::Zero(n, n);
    int offset = 0;
    for (const auto& copies : classes) {
      const int d = static_cast<int>(copies.front().cols());
      const int m = static_cast<int>(copies.size());
      for (int l = 0; l < m; ++l) {
        for (int s = 0; s < d; ++s) out.change_of_basis.col(offset + s * m + l) = copies[l].col(s);
      }
      out.blocks.push_back({d, m});
      offset += d * m;
    }
    out.round_trip_error = 0.0;
    for (const Matrix& b : a.basis) {
      const Matrix conj = out.change_of_basis.adjoint() * b * out.change_of_basis;
      out.round_trip_error = std::max(out.round_trip_error, (conj - block_structure_part(out, b)).norm());
    }
    if (out.round_trip_error > 1e-7) continue;
    out.exceeds_k = std::any_of(out.blocks.begin(), out.blocks.end(),
                                [k](const WedderburnBlock& b) { return b.dim > k; });
    return out;
  }
  throw Error(ErrorCode::kNumericalDegeneracy, "commutant spectrum did not separate blocks");
}

Matrix block_structure_part(const BlockDecomposition& dec, const Matrix& a) {
  const Matrix conj = dec.change_of_basis.adjoint() * a * dec.change_of_basis;
  Matrix out = Matrix::Zero(conj.rows(), conj.cols());
  int offset = 0;
  for (const auto& blk : dec.blocks) {
    const int d = blk.dim;
    const int m = blk.multiplicity;
    const Matrix sub = conj.block(offset, offset, d * m, d * m);
    const Matrix reduced = linalg::partial_trace_second(sub, d, m) / static_cast<double>(m);
    out.block(offset, offset, d * m, d * m) = linalg::kron(reduced, linalg::identity(m));
    offset += d * m;
  }
  return out;
}

Vector state_from_density(const GeneratedAlgebra& a, const Matrix& rho) {
  Vector s(a.dim());
  for (int j = 0; j < a.dim(); ++j) s(j) = (rho * a.basis[j]).trace();
  return s;
}

Vector vector_state(const GeneratedAlgebra& a, const Vector& xi) {
  Vector s(a.dim());
  for (int j = 0; j < a.dim(); ++j) s(j) = xi.dot(a.basis[j] * xi);
  return s;
}

GNSRep gns(const Vector& state, const GeneratedAlgebra& a) {
  const int dim = a.dim();
  if (state.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "state length != algebra dim");
  if (state.imag().cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::kNotAState, "state takes non-real values on hermitian elements");
  }
  auto eval = [&](const Matrix& m) {
    Complex v = 0.0;
    for (int j = 0; j < dim; ++j) v += (a.basis[j] * m).trace() * state(j);
    return v;
  };
  const int n = a.ambient.total_dim();
  if (std::abs(eval(linalg::identity(n)) - 1.0) > 1e-8) {
    throw Error(ErrorCode::kNotAState, "state is not unital");
  }
  Matrix g(dim, dim);
  for (int l = 0; l < dim; ++l) {
    for (int m = 0; m < dim; ++m) g(l, m) = eval(a.basis[l] * a.basis[m]);
  }
  g = linalg::hermitian_part(g);
  const auto es = linalg::eigh(g);
  const double top = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  if (es.values(0) < -1e-8 * top) throw Error(ErrorCode::kNotAState, "state is not positive");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 1e-10 * top) keep.push_back(i);
  }
  const int r = static_cast<int>(keep.size());
  Matrix f(dim, r);
  for (int i = 0; i < r; ++i) f.col(i) = es.vectors.col(keep[i]) / std::sqrt(es.values(keep[i]));

  Vector unit(dim);
  for (int l = 0; l < dim; ++l) unit(l) = a.basis[l].trace();

  GNSRep out;
  out.dimension = r;
  out.cyclic_vector = f.adjoint() * g * unit;
  for (int j = 0; j < dim; ++j) {
    Matrix left(dim, dim);
    for (int l = 0; l < dim; ++l) left.col(l) = a.coordinates(a.basis[j] * a.basis[l]);
    out.rep_matrices.push_back(f.adjoint() * g * left * f);
  }
  auto rep_of = [&](const Matrix& m) {
    const Vector c = a.coordinates(m);
    Matrix p = Matrix::Zero(r, r);
    for (int j = 0; j < dim; ++j) p += c(j) * out.rep_matrices[j];
    return p;
  };
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Matrix lhs = out.rep_matrices[i] * out.rep_matrices[j];
      out.multiplicativity_error =
          std::max(out.multiplicativity_error, (lhs - rep_of(a.basis[i] * a.basis[j])).norm());
    }
    const Complex val = out.cyclic_vector.dot(out.rep_matrices[i] * out.cyclic_vector);
    out.state_error = std::max(out.state_error, std::abs(val - state(i)));
  }
  return out;
}

PureStateReport check_pure_state_bound(const GeneratedAlgebra& a, int k, int samples,
                                       std::uint64_t seed) {
  const BlockDecomposition dec = wedderburn(a, k, seed);
  if (dec.exceeds_k) {
    throw Error(ErrorCode::kPreconditionViolated, "algebra has a block larger than k");
  }
  PureStateReport out;
  out.samples = samples;
  std::vector<int> offsets;
  int offset = 0;
  for (const auto& b : dec.blocks) {
    offsets.push_back(offset);
    offset += b.dim * b.multiplicity;
  }
  for (int i = 0; i < samples; ++i) {
    Rng rng(split_seed(seed ^ 0x9E57A7E5ULL, i));
    const int j = rng.uniform_int(0, static_cast<int>(dec.blocks.size()) - 1);
    const auto& blk = dec.blocks[j];
    const int copy = rng.uniform_int(0, blk.multiplicity - 1);
    const Vector local = rng.unit_vector(blk.dim);
    Vector xi = Vector::Zero(dec.change_of_basis.rows());
    for (int s = 0; s < blk.dim; ++s) {
      xi += local(s) * dec.change_of_basis.col(offsets[j] + s * blk.multiplicity + copy);
    }
    const GNSRep rep = gns(vector_state(a, xi), a);
    out.dimensions.push_back(rep.dimension);
    out.max_dimension = std::max(out.max_dimension, rep.dimension);
    if (rep.dimension <= k && rep.multiplicativity_error <= 1e-7 && rep.state_error <= 1e-8) {
      ++out.passed;
    }
  }
  return out;
}

}  // namespace matorder
