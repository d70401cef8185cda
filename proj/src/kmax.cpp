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
#include "matorder/random.hpp"

namespace matorder {

namespace {

std::vector<int> block_indices(const BlockSpace& space, int n, int b) {
  const int d = space.total_dim();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < space.block_dims()[b]; ++s) idx.push_back(i * d + space.block_offset(b) + s);
  }
  return idx;
}

Matrix restrict(const Matrix& m, const std::vector<int>& idx) {
  const int r = static_cast<int>(idx.size());
  Matrix out(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) out(a, b) = m(idx[a], idx[b]);
  }
  return out;
}

Matrix expand(const Matrix& beta, int d) {
  return linalg::kron(beta.adjoint(), linalg::identity(d));
}

// Push s into the PSD cone along I_k (x) e, which stays inside M_k(V).
Matrix shift_psd(const Matrix& s) {
  const double lam = linalg::min_eigenvalue(s);
  if (lam >= 0.0) return s;
  return s - lam * Matrix::Identity(s.rows(), s.cols());
}

double slack_of(const std::vector<KMaxTerm>& terms, const Matrix& x, int d) {
  Matrix r = x;
  for (const auto& t : terms) {
    const Matrix e = expand(t.beta, d);
    r -= e * t.s * e.adjoint();
  }
  return r.norm();
}

// Route 1: the left support of range(x) has dimension <= k.
bool range_route(const Matrix& x, int n, int d, int k, double tol, KMaxDecomposition& out) {
  const auto es = linalg::eigh(x);
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  std::vector<Matrix> parts;
  for (Eigen::Index l = 0; l < es.values.size(); ++l) {
    if (es.values(l) > 1e-10 * scale) {
      parts.push_back(linalg::unvec(es.vectors.col(l), n, d) * std::sqrt(es.values(l)));
    }
  }
  Matrix q;
  if (parts.empty()) {
    q = Matrix::Zero(n, 1);
    q(0, 0) = 1.0;
  } else {
    Matrix r(n, d * static_cast<int>(parts.size()));
    for (std::size_t p = 0; p < parts.size(); ++p) r.middleCols(p * d, d) = parts[p];
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-9 * sv(0)) ++rank;
    if (rank > k) return false;
    q = svd.matrixU().leftCols(std::max(rank, 1));
  }
  Matrix beta = Matrix::Zero(k, n);
  beta.topRows(q.cols()) = q.adjoint();
  const Matrix e = expand(beta, d);
  KMaxTerm term{beta, shift_psd(linalg::hermitian_part(e.adjoint() * x * e))};
  std::vector<KMaxTerm> terms{term};
  const double slack = slack_of(terms, x, d);
  if (slack > tol) return false;
  out.terms = std::move(terms);
  out.slack = slack;
  return true;
}

// Route 2: x = sum lambda w w^* with every w of Schmidt rank <= k inside one
// ambient block, and each rank-one piece in M_k(V).
bool spectral_route(const Matrix& x, const ConcreteSystem& sys, int n, int k, double tol,
                    KMaxDecomposition& out) {
  const BlockSpace& space = sys.ambient();
  const int d = space.total_dim();
  const double scale = std::max(1.0, x.norm());
  std::vector<KMaxTerm> terms;
  for (int b = 0; b < space.num_blocks(); ++b) {
    const int db = space.block_dims()[b];
    const auto idx = block_indices(space, n, b);
    const auto es = linalg::eigh(restrict(x, idx));
    for (Eigen::Index l = 0; l < es.values.size(); ++l) {
      const double lam = es.values(l);
      if (lam <= 1e-12 * scale) continue;
      Eigen::JacobiSVD<Matrix> svd(linalg::unvec(es.vectors.col(l), n, db),
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      if (sv.size() > k && sv(k) > 1e-9 * sv(0)) return false;
      const int r = std::min<int>(k, static_cast<int>(sv.size()));
      Matrix beta = Matrix::Zero(k, n);
      beta.topRows(r) =
          (svd.matrixU().leftCols(r) * sv.head(r).cast<Complex>().asDiagonal()).adjoint();
      Vector v = Vector::Zero(k * d);
      for (int j = 0; j < r; ++j) {
        v.segment(j * d + space.block_offset(b), db) = svd.matrixV().col(j).conjugate();
      }
      Matrix s = lam * v * v.adjoint();
      if (!sys.spans_ambient()) {
        for (int a = 0; a < k; ++a) {
          for (int c = 0; c < k; ++c) {
            if (sys.span_residual(s.block(a * d, c * d, d, d)) > tolerances().span_tol * scale) {
              return false;
            }
          }
        }
      }
      terms.push_back({beta, s});
    }
  }
  const long cap = static_cast<long>(n) * n * sys.dim() + 1;
  if (static_cast<long>(terms.size()) > cap) return false;
  const double slack = slack_of(terms, x, d);
  if (slack > tol) return false;
  out.terms = std::move(terms);
  out.slack = slack;
  return true;
}

DualWitness make_schmidt_witness(const Matrix& x, const Vector& psi, int n, int d, int k) {
  DualWitness w;
  w.kind = "schmidt";
  w.psi = psi / psi.norm();
  w.schmidt_weight = schmidt_weight(w.psi, n, d, k);
  w.y = w.schmidt_weight * Matrix::Identity(n * d, n * d) - w.psi * w.psi.adjoint();
  w.pairing = linalg::frobenius_inner(x, w.y);
  return w;
}

// Route 3: a block-positive y with Tr(x y) < 0.
bool dual_route(const Matrix& x, int n, int d, int k, double tol, DualWitness& best) {
  best.pairing = std::numeric_limits<double>::infinity();
  if (k == 1) {
    const Matrix pt = linalg::partial_transpose_second(x, n, d);
    auto [lam, z] = linalg::min_eigenpair(pt);
    if (lam < -tol) {
      best.kind = "ppt";
      best.psi = z;
      best.y = linalg::partial_transpose_second(z * z.adjoint(), n, d);
      best.schmidt_weight = 0.0;
      best.pairing = linalg::frobenius_inner(x, best.y);
      return true;
    }
  }
  const double tr = x.trace().real();
  const auto es = linalg::eigh(x);
  const int nd = n * d;
  const int candidates = std::min(nd, 8);
  for (int c = 0; c < candidates; ++c) {
    Vector psi = es.vectors.col(nd - 1 - c);
    for (int it = 0; it < 30; ++it) {
      DualWitness w = make_schmidt_witness(x, psi, n, d, k);
      if (w.pairing < best.pairing) best = w;
      Eigen::JacobiSVD<Matrix> svd(linalg::unvec(psi, n, d), Eigen::ComputeThinU);
      const Matrix u = svd.matrixU().leftCols(std::min(k, n));
      const Matrix p = linalg::kron(u * u.adjoint(), linalg::identity(d));
      psi = linalg::max_eigenpair(x - tr * p).second;
    }
  }
  return best.pairing < -tol;
}

// Hermitian orthonormal basis of M_k.
std::vector<Matrix> hermitian_units(int k) {
  std::vector<Matrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < k; ++a) {
    Matrix m = Matrix::Zero(k, k);
    m(a, a) = 1.0;
    out.push_back(m);
  }
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      Matrix re = Matrix::Zero(k, k);
      re(a, b) = r;
      re(b, a) = r;
      out.push_back(re);
      Matrix im = Matrix::Zero(k, k);
      im(a, b) = Complex(0.0, r);
      im(b, a) = Complex(0.0, -r);
      out.push_back(im);
    }
  }
  return out;
}

RealVector real_vec(const Matrix& m) {
  const Eigen::Index s = m.size();
  RealVector v(2 * s);
  for (Eigen::Index i = 0; i < s; ++i) {
    v(i) = m.data()[i].real();
    v(s + i) = m.data()[i].imag();
  }
  return v;
}

// Route 4: least squares over x = sum beta_j^* s_j beta_j with a fixed frame of
// beta_j and s_j in M_k(V)^+, solved by ADMM and then repaired exactly.
class FrameSolver {
 public:
  FrameSolver(const Matrix& x, const ConcreteSystem& sys, int n, int k,
              std::vector<Matrix> betas)
      : sys_(sys), n_(n), k_(k), d_(sys.ambient().total_dim()), betas_(std::move(betas)) {
    for (const Matrix& h : hermitian_units(k)) {
      for (const Matrix& o : sys.orthonormal_basis()) local_.push_back(linalg::kron(h, o));
    }
    const int q = static_cast<int>(local_.size());
    const int t = static_cast<int>(betas_.size());
    scale_ = std::max(x.norm(), 1e-300);
    b_ = real_vec(x / scale_);
    m_.resize(b_.size(), static_cast<Eigen::Index>(q) * t);
    for (int j = 0; j < t; ++j) {
      const Matrix e = expand(betas_[j], d_);
      for (int l = 0; l < q; ++l) m_.col(j * q + l) = real_vec(e * local_[l] * e.adjoint());
    }
  }

  int terms() const { return static_cast<int>(betas_.size()); }

  Matrix term(const RealVector& c, int j) const {
    const int q = static_cast<int>(local_.size());
    Matrix s = Matrix::Zero(k_ * d_, k_ * d_);
    for (int l = 0; l < q; ++l) s += c(j * q + l) * local_[l];
    return s;
  }

  RealVector coords(const std::vector<Matrix>& ss) const {
    const int q = static_cast<int>(local_.size());
    RealVector c(m_.cols());
    for (int j = 0; j < terms(); ++j) {
      for (int l = 0; l < q; ++l) c(j * q + l) = linalg::frobenius_inner(local_[l], ss[j]);
    }
    return c;
  }

  // Returns the repaired decomposition and its slack in the original scale.
  double solve(int max_iters, KMaxDecomposition& out) {
    const double rho = 1.0;
    const Eigen::Index cols = m_.cols();
    const Eigen::Index rows = m_.rows();
    const bool primal = cols <= rows;
    Eigen::LLT<RealMatrix> llt;
    if (primal) {
      llt.compute(m_.transpose() * m_ + rho * RealMatrix::Identity(cols, cols));
    } else {
      llt.compute(m_ * m_.transpose() + rho * RealMatrix::Identity(rows, rows));
    }
    auto solve_sys = [&](const RealVector& v) -> RealVector {
      if (primal) return llt.solve(v);
      return (v - m_.transpose() * llt.solve(m_ * v)) / rho;
    };
    const RealVector mtb = m_.transpose() * b_;
    std::vector<Matrix> z(terms(), Matrix::Zero(k_ * d_, k_ * d_));
    std::vector<Matrix> u = z;
    RealVector c = RealVector::Zero(cols);
    for (int it = 0; it < max_iters; ++it) {
      std::vector<Matrix> zu(terms());
      for (int j = 0; j < terms(); ++j) zu[j] = z[j] - u[j];
      c = solve_sys(mtb + rho * coords(zu));
      double primal_res = 0.0;
      double dual_res = 0.0;
      for (int j = 0; j < terms(); ++j) {
        const Matrix s = term(c, j);
        const Matrix zn = linalg::psd_part(s + u[j]);
        dual_res += (zn - z[j]).squaredNorm();
        z[j] = zn;
        u[j] += s - z[j];
        primal_res += (s - z[j]).squaredNorm();
      }
      if (std::sqrt(primal_res) < 1e-11 && std::sqrt(dual_res) < 1e-11) break;
    }

    // Alternate a PSD shift with a least-norm correction of the residual.
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(m_);
    double best = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 25; ++round) {
      std::vector<Matrix> ss(terms());
      for (int j = 0; j < terms(); ++j) ss[j] = shift_psd(term(c, j));
      const RealVector cs = coords(ss);
      const double slack = (m_ * cs - b_).norm() * scale_;
      if (slack < best) {
        best = slack;
        out.terms.clear();
        for (int j = 0; j < terms(); ++j) out.terms.push_back({betas_[j], ss[j] * scale_});
      }
      const RealVector r = b_ - m_ * cs;
      if (r.norm() < 1e-15) break;
      c = cs + cod.solve(r);
    }
    out.slack = best;
    return best;
  }

 private:
  const ConcreteSystem& sys_;
  int n_;
  int k_;
  int d_;
  std::vector<Matrix> betas_;
  std::vector<Matrix> local_;
  double scale_ = 1.0;
  RealVector b_;
  RealMatrix m_;
};

// Lawson-Hanson active set.
RealVector nnls(const RealMatrix& a, const RealVector& b) {
  const Eigen::Index n = a.cols();
  RealVector x = RealVector::Zero(n);
  std::vector<char> passive(n, 0);
  const double thr = 1e-13 * std::max(1.0, b.norm()) * std::max(1.0, a.norm());
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const RealVector w = a.transpose() * (b - a * x);
    Eigen::Index j = -1;
    double wmax = thr;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!passive[i] && w(i) > wmax) {
        wmax = w(i);
        j = i;
      }
    }
    if (j < 0) break;
    passive[j] = 1;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<Eigen::Index> cols;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (passive[i]) cols.push_back(i);
      }
      RealMatrix ap(a.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) ap.col(c) = a.col(cols[c]);
      const RealVector zp = ap.colPivHouseholderQr().solve(b);
      RealVector z = RealVector::Zero(n);
      for (std::size_t c = 0; c < cols.size(); ++c) z(cols[c]) = zp(c);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index i : cols) {
        if (z(i) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(i) / (x(i) - z(i)));
        }
      }
      if (feasible) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      for (Eigen::Index i : cols) {
        if (x(i) <= 1e-15) {
          x(i) = 0.0;
          passive[i] = 0;
        }
      }
    }
  }
  return x;
}

struct Atom {
  Vector w;  // embedded in C^n (x) C^D
  Matrix left;
  Matrix right;  // embedded rows
};

// Route 4, for V spanning the ambient: column generation over atoms w w^* with
// Schmidt rank <= k inside one block. Pricing is the k-min search on the
// negated residual; every step refits all coefficients.
double atom_route(const Matrix& x, const ConcreteSystem& sys, int n, int k,
                  const SearchOptions& opts, double tol, KMaxDecomposition& out) {
  const BlockSpace& space = sys.ambient();
  const int d = space.total_dim();
  std::vector<SystemPtr> block_sys;
  std::vector<std::vector<int>> block_idx;
  for (int b = 0; b < space.num_blocks(); ++b) {
    block_sys.push_back(
        make_system(ConcreteSystem::full(BlockSpace::single(space.block_dims()[b]), k)));
    block_idx.push_back(block_indices(space, n, b));
  }
  const double scale = std::max(x.norm(), 1e-300);
  const RealVector target = real_vec(x / scale);
  std::vector<Atom> atoms;
  RealMatrix cols(target.size(), 0);
  RealVector coef;
  Matrix residual = x / scale;
  double slack = residual.norm();
  SearchOptions so = opts;
  so.restarts = std::clamp(opts.restarts, 1, 4);
  so.threads = 1;
  const int max_steps = 40 + 4 * n * n * sys.dim();
  for (int step = 0; step < max_steps && slack * scale > tol; ++step) {
    double best = 0.0;
    Atom atom;
    for (int b = 0; b < space.num_blocks(); ++b) {
      so.seed = split_seed(opts.seed ^ 0x41544F4DULL, static_cast<std::uint64_t>(step) * 64 + b);
      const LevelElement neg =
          LevelElement::trusted(block_sys[b], n, -restrict(residual, block_idx[b]));
      const CompressionSearch cs = kmin_search_compressions(neg, k, so);
      if (cs.value < best) {
        best = cs.value;
        const int db = space.block_dims()[b];
        atom.w = Vector::Zero(n * d);
        for (std::size_t a = 0; a < block_idx[b].size(); ++a) atom.w(block_idx[b][a]) = cs.witness.vector(a);
        atom.left = cs.witness.left;
        atom.right = Matrix::Zero(d, cs.witness.right.cols());
        atom.right.block(space.block_offset(b), 0, db, cs.witness.right.cols()) = cs.witness.right;
      }
    }
    if (best >= -1e-15) break;  // no atom improves the fit
    atoms.push_back(atom);
    cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
    cols.col(cols.cols() - 1) = real_vec(atom.w * atom.w.adjoint());
    coef = nnls(cols, target);
    // keep only the support, so the pool stays a basic solution
    std::vector<Atom> kept;
    RealMatrix kc(cols.rows(), 0);
    RealVector kcoef(0);
    for (Eigen::Index j = 0; j < coef.size(); ++j) {
      if (coef(j) <= 0.0) continue;
      kept.push_back(atoms[j]);
      kc.conservativeResize(Eigen::NoChange, kc.cols() + 1);
      kc.col(kc.cols() - 1) = cols.col(j);
      kcoef.conservativeResize(kcoef.size() + 1);
      kcoef(kcoef.size() - 1) = coef(j);
    }
    atoms = std::move(kept);
    cols = std::move(kc);
    coef = std::move(kcoef);
    residual = x / scale;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      residual -= coef(j) * atoms[j].w * atoms[j].w.adjoint();
    }
    slack = residual.norm();
  }
  out.terms.clear();
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    // w = (beta^* (x) I) v with beta^* = [left | 0] and v = sum_r e_r (x) right_r.
    const Atom& a = atoms[j];
    const int r = static_cast<int>(a.left.cols());
    Matrix beta = Matrix::Zero(k, n);
    beta.topRows(r) = a.left.adjoint();
    Vector v = Vector::Zero(k * d);
    for (int c = 0; c < r; ++c) v.segment(c * d, d) = a.right.col(c);
    out.terms.push_back({beta, (coef(j) * scale) * (v * v.adjoint())});
  }
  out.slack = slack_of(out.terms, x, d);
  return out.slack;
}

std::vector<Matrix> frame(int n, int k, int count, Rng& rng) {
  std::vector<Matrix> out;
  if (k == 1) {
    // Rank-one projectors spanning Herm(n).
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n && static_cast<int>(out.size()) < count; ++i) {
      Matrix b = Matrix::Zero(1, n);
      b(0, i) = 1.0;
      out.push_back(b);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (static_cast<int>(out.size()) + 2 > count) break;
        Matrix b = Matrix::Zero(1, n);
        b(0, i) = r;
        b(0, j) = r;
        out.push_back(b);
        b(0, j) = Complex(0.0, r);
        out.push_back(b);
      }
    }
  }
  while (static_cast<int>(out.size()) < count) out.push_back(rng.gaussian_matrix(k, n));
  return out;
}

}  // namespace

double schmidt_weight(const Vector& psi, int n, int d, int k) {
  Eigen::JacobiSVD<Matrix> svd(linalg::unvec(psi, n, d));
  const auto& sv = svd.singularValues();
  double top = 0.0;
  for (int j = 0; j < std::min<int>(k, static_cast<int>(sv.size())); ++j) top += sv(j) * sv(j);
  return top / sv.squaredNorm();
}

double dual_pairing(const LevelElement& x, const LevelElement& y) {
  if (x.level() != y.level() || x.ambient_dim() != y.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "dual pairing needs matching levels");
  }
  return linalg::frobenius_inner(x.flat(), y.flat());
}

Verdict is_kmax_member(const LevelElement& x, int k, double tol, const SearchOptions& opts) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const ConcreteSystem& sys = *x.system();
  const int n = x.level();
  const int d = x.ambient_dim();
  const Matrix& flat = x.flat();
  Verdict v;

  auto [lam, w] = linalg::min_eigenpair(flat);
  v.diagnostics.values.emplace_back("min_eigenvalue", lam);
  if (lam < -tol) {
    DualWitness dw;
    dw.kind = "psd";
    dw.psi = w;
    dw.y = w * w.adjoint();
    dw.pairing = lam;
    v.status = Status::kNotMember;
    v.diagnostics.best_objective = lam;
    v.certificate = std::move(dw);
    return v;
  }

  KMaxDecomposition dec;
  if (range_route(flat, n, d, k, tol, dec) || spectral_route(flat, sys, n, k, tol, dec)) {
    v.status = Status::kMember;
    v.diagnostics.best_objective = dec.slack;
    v.certificate = std::move(dec);
    return v;
  }

  DualWitness dw;
  if (dual_route(flat, n, d, k, tol, dw)) {
    v.status = Status::kNotMember;
    v.diagnostics.best_objective = dw.pairing;
    v.certificate = std::move(dw);
    return v;
  }
  v.diagnostics.values.emplace_back("dual_pairing", dw.pairing);

  if (sys.spans_ambient()) {
    KMaxDecomposition ad;
    const double slack = atom_route(flat, sys, n, k, opts, tol, ad);
    v.diagnostics.values.emplace_back("atom_slack", slack);
    if (slack <= tol) {
      v.status = Status::kMember;
      v.diagnostics.best_objective = slack;
      v.certificate = std::move(ad);
      return v;
    }
  }

  const long cap = static_cast<long>(n) * n * sys.dim() + 1;
  const long per_term = static_cast<long>(k) * k * sys.dim();
  const long budget = std::max<long>(n * n, std::min<long>(2L * n * n, 1500 / per_term));
  const int t = static_cast<int>(std::min(cap, budget));
  const int rounds = std::clamp(opts.restarts, 1, 4);
  double best = std::numeric_limits<double>::infinity();
  KMaxDecomposition best_dec;
  for (int r = 0; r < rounds; ++r) {
    Rng rng(split_seed(opts.seed ^ 0x4B4D4158ULL, r));
    FrameSolver solver(flat, sys, n, k, frame(n, k, t, rng));
    KMaxDecomposition cand;
    const double slack = solver.solve(std::max(opts.max_iters, 1) * 4, cand);
    v.diagnostics.iterations += 1;
    if (slack < best) {
      best = slack;
      best_dec = std::move(cand);
    }
    if (best <= tol) break;
  }
  v.diagnostics.restarts = rounds;
  v.diagnostics.best_objective = best;
  v.diagnostics.values.emplace_back("frame_slack", best);
  if (best <= tol) {
    v.status = Status::kMember;
    v.certificate = std::move(best_dec);
    return v;
  }
  v.status = Status::kUndecided;
  return v;
}

double kmax_slack(const KMaxDecomposition& dec, const LevelElement& x) {
  return slack_of(dec.terms, x.flat(), x.ambient_dim());
}

bool check_kmax_decomposition(const KMaxDecomposition& dec, const LevelElement& x, int k,
                              double tol) {
  const ConcreteSystem& sys = *x.system();
  const int n = x.level();
  const int d = x.ambient_dim();
  const long cap = static_cast<long>(n) * n * sys.dim() + 1;
  if (static_cast<long>(dec.terms.size()) > cap) return false;
  for (const auto& t : dec.terms) {
    if (t.beta.rows() != k || t.beta.cols() != n) return false;
    if (t.s.rows() != k * d || t.s.cols() != k * d) return false;
    if (linalg::hermiticity_defect(t.s) > 1e-10 * std::max(1.0, t.s.norm())) return false;
    if (linalg::min_eigenvalue(t.s) < -1e-10 * std::max(1.0, t.s.norm())) return false;
    for (int a = 0; a < k; ++a) {
      for (int c = 0; c < k; ++c) {
        if (sys.span_residual(t.s.block(a * d, c * d, d, d)) >
            tolerances().span_tol * std::max(1.0, t.s.norm())) {
          return false;
        }
      }
    }
  }
  return kmax_slack(dec, x) <= tol;
}

bool check_dual_witness(const DualWitness& w, const LevelElement& x, int k, double tol) {
  const int n = x.level();
  const int d = x.ambient_dim();
  if (w.y.rows() != n * d) return false;
  const double pairing = linalg::frobenius_inner(x.flat(), w.y);
  if (std::abs(pairing - w.pairing) > 1e-8 * std::max(1.0, std::abs(pairing))) return false;
  if (!(pairing < -tol)) return false;
  if (w.kind == "psd") {
    return linalg::min_eigenvalue(w.y) >= -1e-10;
  }
  if (w.kind == "ppt") {
    return k == 1 && linalg::min_eigenvalue(linalg::partial_transpose_second(w.y, n, d)) >= -1e-10;
  }
  if (w.kind == "schmidt") {
    if (std::abs(w.psi.norm() - 1.0) > 1e-9) return false;
    const double sigma = schmidt_weight(w.psi, n, d, k);
    if (w.schmidt_weight < sigma - 1e-12) return false;
    const Matrix expect =
        w.schmidt_weight * Matrix::Identity(n * d, n * d) - w.psi * w.psi.adjoint();
    return (expect - w.y).norm() <= 1e-9;
  }
  return false;
}

}  // namespace matorder
