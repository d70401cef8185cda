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

#include <algorithm>
#include <cmath>
#include <limits>

#include "matorder/cones.hpp"
#include "matorder/parallel.hpp"
#include "matorder/random.hpp"

namespace matorder {

LinearMap::LinearMap(SystemPtr source, SystemPtr target, RealMatrix coefficients)
    : source_(std::move(source)), target_(std::move(target)), coeffs_(std::move(coefficients)) {
  if (coeffs_.rows() != target_->dim() || coeffs_.cols() != source_->dim()) {
    throw Error(ErrorCode::kBasisMismatch, "coefficient matrix must be dim(W) x dim(V)");
  }
  const int dw = target_->ambient().total_dim();
  std::vector<Matrix> images;
  for (int j = 0; j < source_->dim(); ++j) {
    Matrix img = Matrix::Zero(dw, dw);
    for (int i = 0; i < target_->dim(); ++i) img += coeffs_(i, j) * target_->basis()[i].dense();
    images.push_back(img);
  }
  for (const Matrix& o : source_->orthonormal_basis()) {
    const Vector c = source_->coordinates(o);
    Matrix img = Matrix::Zero(dw, dw);
    for (int j = 0; j < source_->dim(); ++j) img += c(j) * images[j];
    ortho_images_.push_back(img);
  }
}

Matrix LinearMap::apply(const Matrix& a) const {
  const int dw = target_->ambient().total_dim();
  Matrix out = Matrix::Zero(dw, dw);
  const auto& ortho = source_->orthonormal_basis();
  for (std::size_t r = 0; r < ortho.size(); ++r) {
    out += (ortho[r].adjoint() * a).trace() * ortho_images_[r];
  }
  return out;
}

Matrix LinearMap::apply_level(const Matrix& flat, int n) const {
  const int dv = source_->ambient().total_dim();
  const int dw = target_->ambient().total_dim();
  if (flat.rows() != n * dv) throw Error(ErrorCode::kDimensionMismatch, "level size mismatch");
  Matrix out(n * dw, n * dw);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.block(i * dw, j * dw, dw, dw) = apply(flat.block(i * dv, j * dv, dv, dv));
  }
  return out;
}

Matrix LinearMap::adjoint_level(const Matrix& flat, int n) const {
  const int dv = source_->ambient().total_dim();
  const int dw = target_->ambient().total_dim();
  if (flat.rows() != n * dw) throw Error(ErrorCode::kDimensionMismatch, "level size mismatch");
  const auto& ortho = source_->orthonormal_basis();
  Matrix out = Matrix::Zero(n * dv, n * dv);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix z = flat.block(i * dw, j * dw, dw, dw);
      Matrix h = Matrix::Zero(dv, dv);
      for (std::size_t r = 0; r < ortho.size(); ++r) h += (z * ortho_images_[r]).trace() * ortho[r];
      out.block(i * dv, j * dv, dv, dv) = h;
    }
  }
  return out;
}

Matrix LinearMap::ambient_choi() const {
  if (!source_->spans_ambient()) {
    throw Error(ErrorCode::kPreconditionViolated, "ambient Choi matrix needs V to span the ambient");
  }
  const BlockSpace& space = source_->ambient();
  const int dv = space.total_dim();
  const int dw = target_->ambient().total_dim();
  Matrix c = Matrix::Zero(dv * dw, dv * dw);
  for (int s = 0; s < dv; ++s) {
    for (int t = 0; t < dv; ++t) {
      if (space.block_of(s) != space.block_of(t)) continue;
      Matrix e = Matrix::Zero(dv, dv);
      e(s, t) = 1.0;
      c.block(s * dw, t * dw, dw, dw) = apply(e);
    }
  }
  return c;
}

LinearMap map_from_function(SystemPtr source, SystemPtr target,
                            const std::function<Matrix(const Matrix&)>& f) {
  RealMatrix m(target->dim(), source->dim());
  for (int j = 0; j < source->dim(); ++j) {
    const Matrix img = f(source->basis()[j].dense());
    const SpanProjection p = target->project(img);
    if (!p.in_span) throw Error(ErrorCode::kOutOfSpan, "map image leaves the target system");
    m.col(j) = target->coordinates(p.projection).real();
  }
  return LinearMap(std::move(source), std::move(target), m);
}

namespace {

struct SeesawResult {
  double value = std::numeric_limits<double>::infinity();
  Matrix input;
  Vector vector;
  long iterations = 0;
};

// min over trace-one c in M_k(V)^+ of Tr(h c).
Matrix best_input(const Matrix& h, const ConcreteSystem& sys, int k, const AdmmState* warm,
                  AdmmState& state) {
  const BlockSpace& space = sys.ambient();
  const int d = space.total_dim();
  if (sys.spans_ambient()) {
    double best = std::numeric_limits<double>::infinity();
    Vector best_v;
    for (int b = 0; b < space.num_blocks(); ++b) {
      const int db = space.block_dims()[b];
      std::vector<int> idx;
      for (int i = 0; i < k; ++i) {
        for (int s = 0; s < db; ++s) idx.push_back(i * d + space.block_offset(b) + s);
      }
      Matrix sub(idx.size(), idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t c = 0; c < idx.size(); ++c) sub(a, c) = h(idx[a], idx[c]);
      }
      auto [lam, v] = linalg::min_eigenpair(sub);
      if (lam < best) {
        best = lam;
        best_v = Vector::Zero(k * d);
        for (std::size_t a = 0; a < idx.size(); ++a) best_v(idx[a]) = v(a);
      }
    }
    return best_v * best_v.adjoint();
  }
  auto project = [&](const Matrix& y) {
    Matrix out(y.rows(), y.cols());
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) out.block(i * d, j * d, d, d) = sys.project(y.block(i * d, j * d, d, d)).projection;
    }
    return out;
  };
  ConicOptions opts;
  opts.max_iters = 1500;
  ConicSolution sol = minimize_over_trace_one_psd(h, project, opts, warm);
  state = sol.state;
  return sol.point;
}

SeesawResult seesaw(const LinearMap& phi, int k, std::uint64_t seed, int max_iters) {
  const int dw = phi.target()->ambient().total_dim();
  Rng rng(seed);
  Vector z = rng.unit_vector(k * dw);
  SeesawResult out;
  AdmmState state;
  bool warm = false;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    const Matrix h = linalg::hermitian_part(phi.adjoint_level(z * z.adjoint(), k));
    AdmmState next;
    const Matrix c = best_input(h, *phi.source(), k, warm ? &state : nullptr, next);
    if (next.z.size() > 0) {
      state = next;
      warm = true;
    }
    auto [lam, zn] = linalg::min_eigenpair(linalg::hermitian_part(phi.apply_level(c, k)));
    z = zn;
    out.iterations = it + 1;
    if (lam < out.value) {
      out.value = lam;
      out.input = c;
      out.vector = zn;
    }
    if (prev - lam <= 1e-12 * std::max(1.0, std::abs(lam))) break;
    prev = lam;
  }
  return out;
}

}  // namespace

Verdict is_map_k_positive(const LinearMap& phi, int k, double tol, const SearchOptions& opts) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  Verdict v;
  if (phi.source()->spans_ambient()) {
    const Matrix c = phi.ambient_choi();
    const double lam = linalg::min_eigenvalue(c);
    v.diagnostics.values.emplace_back("choi_min_eigenvalue", lam);
    if (lam >= -tol) {
      v.status = Status::kMember;
      v.certificate = SpectralProof{"choi_psd", lam};
      v.diagnostics.best_objective = lam;
      return v;
    }
    if (k == 1) {
      const int dv = phi.source()->ambient().total_dim();
      const int dw = phi.target()->ambient().total_dim();
      const double lam_pt = linalg::min_eigenvalue(linalg::partial_transpose_first(c, dv, dw));
      v.diagnostics.values.emplace_back("choi_partial_transpose_min_eigenvalue", lam_pt);
      if (lam_pt >= -tol) {
        v.status = Status::kMember;
        v.certificate = SpectralProof{"choi_partial_transpose_psd", lam_pt};
        v.diagnostics.best_objective = lam_pt;
        return v;
      }
    }
  }

  const int restarts = std::max(opts.restarts, 1);
  auto results = run_indexed<SeesawResult>(restarts, opts.threads, [&](int r) {
    return seesaw(phi, k, split_seed(opts.seed, r), opts.max_iters);
  });
  int best = 0;
  for (int r = 0; r < restarts; ++r) {
    v.diagnostics.iterations += results[r].iterations;
    if (results[r].value < results[best].value) best = r;
  }
  v.diagnostics.restarts = restarts;
  v.diagnostics.best_objective = results[best].value;
  if (results[best].value < -tol) {
    v.status = Status::kNotMember;
    v.certificate = MapRefutation{results[best].input, results[best].vector, results[best].value};
    return v;
  }
  v.status = Status::kUndecided;
  return v;
}

}  // namespace matorder
