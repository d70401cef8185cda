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

namespace {

// Truncates w to Schmidt rank <= k across C^n (x) C^d and evaluates x on it.
KMinWitness make_witness(const Vector& w, int n, int d, int k, const Matrix& x) {
  const Matrix wm = linalg::unvec(w, n, d);
  Eigen::JacobiSVD<Matrix> svd(wm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < std::min<int>(k, static_cast<int>(sv.size())) && sv(r) > 0.0) ++r;
  r = std::max(r, 1);
  KMinWitness out;
  out.left = svd.matrixU().leftCols(r) * sv.head(r).cast<Complex>().asDiagonal();
  out.right = svd.matrixV().leftCols(r).conjugate();
  Vector v = Vector::Zero(n * d);
  for (int j = 0; j < r; ++j) {
    v += linalg::kron(out.left.col(j), out.right.col(j)).col(0);
  }
  const double norm = v.norm();
  out.left /= norm;
  out.vector = v / norm;
  out.value = out.vector.dot(x * out.vector).real();
  return out;
}

struct RestartResult {
  double value = std::numeric_limits<double>::infinity();
  Vector w;
  long iterations = 0;
};

RestartResult compression_restart(const Matrix& x, int n, int d, int k,
                                  std::uint64_t seed, int max_iters) {
  Rng rng(seed);
  Matrix alpha = rng.isometry(n, k);
  const Matrix id_d = linalg::identity(d);
  const Matrix id_n = linalg::identity(n);
  RestartResult out;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    // Left factor fixed: w ranges over range(alpha (x) I).
    const Matrix a = linalg::kron(alpha, id_d);
    auto [lam_a, va] = linalg::min_eigenpair(a.adjoint() * x * a);
    Vector w = a * va;

    // Right factor fixed to the row space of the current w.
    Eigen::JacobiSVD<Matrix> svd_r(linalg::unvec(w, n, d), Eigen::ComputeThinV);
    const Matrix beta = svd_r.matrixV().leftCols(k).conjugate();
    const Matrix b = linalg::kron(id_n, beta);
    auto [lam_b, vb] = linalg::min_eigenpair(b.adjoint() * x * b);
    w = b * vb;

    Eigen::JacobiSVD<Matrix> svd_l(linalg::unvec(w, n, d), Eigen::ComputeThinU);
    alpha = svd_l.matrixU().leftCols(k);

    out.iterations = it + 1;
    if (lam_b < out.value) {
      out.value = lam_b;
      out.w = w;
    }
    if (prev - lam_b <= 1e-13 * std::max(1.0, std::abs(lam_b))) break;
    prev = lam_b;
  }
  return out;
}

Matrix build_choi_objective(const Matrix& x, const Vector& v, int n, int d, int k) {
  Matrix g = Matrix::Zero(d * k, d * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix vjvi = v.segment(j * k, k) * v.segment(i * k, k).adjoint();
      g += linalg::kron(x.block(i * d, j * d, d, d).transpose(), vjvi);
    }
  }
  return linalg::hermitian_part(g);
}

Matrix apply_kstate_flat(const Matrix& choi, const Matrix& x, int n, int d, int k) {
  Matrix out(n * k, n * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.block(i * k, j * k, k, k) = apply_choi(choi, x.block(i * d, j * d, d, d), d, k);
    }
  }
  return linalg::hermitian_part(out);
}

struct KStateRestart {
  double value = std::numeric_limits<double>::infinity();
  Matrix choi;
  Vector v;
  long iterations = 0;
  double residual = 0.0;
};

KStateRestart kstate_restart(const Matrix& x, int n, int d, int k, std::uint64_t seed,
                             int max_iters, const ConicOptions& conic) {
  Rng rng(seed);
  Vector v = rng.unit_vector(n * k);
  KStateRestart out;
  AdmmState warm;
  bool have_warm = false;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    const Matrix g = build_choi_objective(x, v, n, d, k);
    ConicSolution sol =
        minimize_over_ucp_choi(g, d, k, conic, have_warm ? &warm : nullptr);
    warm = sol.state;
    have_warm = true;
    const Matrix phi_x = apply_kstate_flat(sol.point, x, n, d, k);
    auto [lam, vn] = linalg::min_eigenpair(phi_x);
    v = vn;
    out.iterations = it + 1;
    if (lam < out.value) {
      out.value = lam;
      out.choi = sol.point;
      out.v = vn;
      out.residual = sol.primal_residual;
    }
    if (prev - lam <= 1e-11 * std::max(1.0, std::abs(lam))) break;
    prev = lam;
  }
  return out;
}

}  // namespace

CompressionSearch kmin_search_compressions(const LevelElement& x, int k,
                                           const SearchOptions& opts) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const int n = x.level();
  const int d = x.ambient_dim();
  const Matrix& flat = x.flat();
  CompressionSearch out;

  if (k >= std::min(n, d)) {
    auto [lam, w] = linalg::min_eigenpair(flat);
    out.exact = true;
    out.witness = make_witness(w, n, d, k, flat);
    out.value = out.witness.value;
    out.iterations = 1;
    out.restarts = 1;
    out.restart_values = {out.value};
    return out;
  }

  const int restarts = std::max(opts.restarts, 1);
  auto results = run_indexed<RestartResult>(restarts, opts.threads, [&](int r) {
    return compression_restart(flat, n, d, k, split_seed(opts.seed, r), opts.max_iters);
  });
  int best = 0;
  for (int r = 0; r < restarts; ++r) {
    out.iterations += results[r].iterations;
    out.restart_values.push_back(results[r].value);
    if (results[r].value < results[best].value) best = r;
  }
  out.restarts = restarts;
  out.witness = make_witness(results[best].w, n, d, k, flat);
  out.value = out.witness.value;
  return out;
}

KStateSearch kmin_search_kstates(const LevelElement& x, int k, const SearchOptions& opts,
                                 const ConicOptions& conic) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const int n = x.level();
  const int d = x.ambient_dim();
  const Matrix& flat = x.flat();
  const int restarts = std::max(opts.restarts, 1);
  auto results = run_indexed<KStateRestart>(restarts, opts.threads, [&](int r) {
    // Stream offset keeps B's random draws disjoint from A's.
    return kstate_restart(flat, n, d, k, split_seed(opts.seed ^ 0xB5B5B5B5ULL, r),
                          opts.max_iters, conic);
  });
  KStateSearch out;
  int best = 0;
  for (int r = 0; r < restarts; ++r) {
    out.iterations += results[r].iterations;
    out.max_primal_residual = std::max(out.max_primal_residual, results[r].residual);
    if (results[r].value < results[best].value) best = r;
  }
  out.restarts = restarts;
  out.witness.choi = results[best].choi;
  out.witness.vector = results[best].v;
  out.witness.k = k;
  out.witness.value =
      results[best].v.dot(apply_kstate_flat(results[best].choi, flat, n, d, k) *
                          results[best].v)
          .real();
  out.value = out.witness.value;
  return out;
}

Matrix apply_kstate(const Matrix& choi, const LevelElement& x, int k) {
  const int d = x.ambient_dim();
  if (choi.rows() != d * k) {
    throw Error(ErrorCode::kDimensionMismatch, "Choi matrix does not match D * k");
  }
  return apply_kstate_flat(choi, x.flat(), x.level(), d, k);
}

Verdict is_kmin_member(const LevelElement& x, int k, double tol, const SearchOptions& opts) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const int n = x.level();
  const int d = x.ambient_dim();
  Verdict v;
  auto [lam, w] = linalg::min_eigenpair(x.flat());
  v.diagnostics.values.emplace_back("min_eigenvalue", lam);

  if (lam >= -tol) {
    v.status = Status::kMember;
    v.certificate = SpectralProof{n <= k ? "level_at_most_k" : "psd", lam};
    v.diagnostics.best_objective = lam;
    return v;
  }
  if (k >= std::min(n, d)) {
    // Every vector has Schmidt rank <= k, so the bottom eigenvector refutes.
    KMinWitness wit = make_witness(w, n, d, k, x.flat());
    v.status = Status::kNotMember;
    v.diagnostics.best_objective = wit.value;
    v.diagnostics.iterations = 1;
    v.certificate = std::move(wit);
    return v;
  }

  CompressionSearch a = kmin_search_compressions(x, k, opts);
  v.diagnostics.restarts = a.restarts;
  v.diagnostics.iterations = a.iterations;
  v.diagnostics.best_objective = a.value;
  v.diagnostics.values.emplace_back("compression_objective", a.value);
  if (a.value < -tol) {
    v.status = Status::kNotMember;
    v.certificate = std::move(a.witness);
    return v;
  }

  KStateSearch b = kmin_search_kstates(x, k, opts);
  v.diagnostics.restarts += b.restarts;
  v.diagnostics.iterations += b.iterations;
  v.diagnostics.values.emplace_back("kstate_objective", b.value);
  v.diagnostics.best_objective = std::min(a.value, b.value);
  if (b.value < -tol) {
    v.status = Status::kNotMember;
    v.certificate = std::move(b.witness);
    return v;
  }
  v.status = Status::kUndecided;
  return v;
}

double kmin_best_objective(const LevelElement& x, int k, int restarts, std::uint64_t seed,
                           int max_iters) {
  SearchOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  opts.max_iters = max_iters;
  return kmin_search_compressions(x, k, opts).value;
}

bool check_kmin_witness(const KMinWitness& w, const LevelElement& x, int k, double tol) {
  const int n = x.level();
  const int d = x.ambient_dim();
  if (w.left.cols() > k || w.left.cols() != w.right.cols()) return false;
  if (w.left.rows() != n || w.right.rows() != d) return false;
  Vector v = Vector::Zero(n * d);
  for (Eigen::Index j = 0; j < w.left.cols(); ++j) {
    v += linalg::kron(w.left.col(j), w.right.col(j)).col(0);
  }
  if ((v - w.vector).norm() > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9) return false;
  const double value = v.dot(x.flat() * v).real();
  return std::abs(value - w.value) <= 1e-9 * std::max(1.0, std::abs(value)) &&
         value < -tol;
}

bool check_kstate_witness(const KStateWitness& w, const LevelElement& x, double tol) {
  const int d = x.ambient_dim();
  const int k = w.k;
  if (k < 1 || w.choi.rows() != d * k) return false;
  if (linalg::min_eigenvalue(w.choi) < -1e-9) return false;
  if (choi_unitality_residual(w.choi, d, k) > 1e-8) return false;
  if (std::abs(w.vector.norm() - 1.0) > 1e-9) return false;
  const double value = w.vector.dot(apply_kstate(w.choi, x, k) * w.vector).real();
  return std::abs(value - w.value) <= 1e-8 && value < -tol;
}

bool level_positive(const LevelElement& x, int k) {
  if (x.level() > k) {
    throw Error(ErrorCode::kLevelTooHigh, "level_positive needs n <= k");
  }
  const double eig_tol = tolerances().eig_tol;
  const double direct = min_eigenvalue(x);
  if (x.level() == 1) {
    // Defining test at level k: I_k (x) x in C.
    return std::min(direct, min_eigenvalue(amplify(x, k))) >= -eig_tol;
  }
  return direct >= -eig_tol;
}

}  // namespace matorder
