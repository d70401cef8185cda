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

#include "matorder/projections.hpp"

#include <algorithm>
#include <cmath>

#include "matorder/cones.hpp"

namespace matorder {

namespace {

struct TSearch {
  Status status = Status::kUndecided;
  double t = 0.0;
  double min_eigenvalue = 0.0;
  bool exhausted = false;
  Vector kernel_witness;
  double kernel_value = 0.0;
  long evaluations = 0;
};

// Membership of a level-2n flat matrix in the k-minimal cone of `sys`.
Status cone_status(const Matrix& y, const SystemPtr& sys, int level, double tol,
                   const SearchOptions& search, double& lam) {
  lam = linalg::min_eigenvalue(y);
  if (lam >= -tol) return Status::kMember;
  const int k = sys->k();
  if (sys->k_minimal_realization() || level <= k) return Status::kNotMember;
  const Verdict v = is_kmin_member(LevelElement::trusted(sys, level, y), k, tol, search);
  return v.status;
}

TSearch search_t(const LevelElement& x, const Matrix& a, const Matrix& b, double eps,
                 double tol, const CpConeOptions& opts) {
  const SystemPtr& sys = x.system();
  const int level = x.level();
  const Matrix base = x.flat() + eps * a;
  TSearch out;
  double lam = 0.0;

  Status s0 = cone_status(base, sys, level, tol, opts.search, lam);
  ++out.evaluations;
  if (s0 == Status::kMember) {
    out.status = Status::kMember;
    out.t = 0.0;
    out.min_eigenvalue = lam;
    return out;
  }

  Status smax = cone_status(base + opts.t_max * b, sys, level, tol, opts.search, lam);
  ++out.evaluations;
  if (smax != Status::kMember) {
    out.status = smax;
    out.t = opts.t_max;
    out.min_eigenvalue = lam;
    out.exhausted = smax == Status::kNotMember;
    // Directions killed by b see no benefit from t at all.
    const auto es = linalg::eigh(b);
    const double thr = 1e-9 * std::max(1.0, es.values.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (es.values(i) <= thr) cols.push_back(i);
    }
    if (!cols.empty()) {
      Matrix kb(b.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t i = 0; i < cols.size(); ++i) kb.col(i) = es.vectors.col(cols[i]);
      auto [kl, kv] = linalg::min_eigenpair(kb.adjoint() * base * kb);
      if (kl < -tol) {
        out.kernel_witness = kb * kv;
        out.kernel_value = kl;
      }
    }
    return out;
  }

  // Feasibility is monotone in t; bisect on a log scale.
  double lo = 0.0;
  double hi = opts.t_max;
  double hi_lam = lam;
  for (int step = 0; step < opts.bisection_steps; ++step) {
    const double lo_eff = std::max(lo, 1e-12 * opts.t_max);
    if (hi / lo_eff < 1.0 + 1e-6) break;
    const double mid = std::sqrt(lo_eff * hi);
    double mid_lam = 0.0;
    const Status sm = cone_status(base + mid * b, sys, level, tol, opts.search, mid_lam);
    ++out.evaluations;
    if (sm == Status::kMember) {
      hi = mid;
      hi_lam = mid_lam;
    } else {
      lo = mid;
    }
  }
  out.status = Status::kMember;
  out.t = hi;
  out.min_eigenvalue = hi_lam;
  return out;
}

// Eigenvalues of p this close to 0 or 1 count as idempotent directions.
constexpr double kSpectralGap = 1e-7;

}  // namespace

ProjectionCandidate ProjectionCandidate::make(SystemPtr system, const HermitianElement& p) {
  if (!(p.space() == system->ambient())) {
    throw Error(ErrorCode::kAmbientMismatch, "candidate lives in a different ambient");
  }
  const SpanProjection sp = project_to_span(p, *system);
  if (!sp.in_span) throw Error(ErrorCode::kOutOfSpan, "candidate is not in the system");
  const HermitianElement e = HermitianElement::identity(system->ambient());
  const double eig_tol = tolerances().eig_tol;
  if (min_eigenvalue(p) < -eig_tol || min_eigenvalue(e - p) < -eig_tol) {
    throw Error(ErrorCode::kNotPositiveContraction, "p must satisfy 0 <= p <= e");
  }
  return ProjectionCandidate{std::move(system), p, e - p};
}

double ProjectionCandidate::idempotency_defect() const {
  const Matrix& m = p.dense();
  return (m * m - m).norm();
}

LevelElement j2_image(const LevelElement& x) {
  const int n = x.level();
  const int d = x.ambient_dim();
  Matrix out(2 * n * d, 2 * n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix xij = x.flat().block(i * d, j * d, d, d);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out.block((i * 2 + a) * d, (j * 2 + b) * d, d, d) = xij;
      }
    }
  }
  return LevelElement::trusted(x.system(), 2 * n, std::move(out));
}

LevelElement pi_p_apply(const HermitianElement& x, const ProjectionCandidate& c) {
  return j2_image(LevelElement::from_element(c.system, x));
}

LevelElement doubled_diagonal(const SystemPtr& system, int n, const HermitianElement& a,
                              const HermitianElement& b) {
  const int d = system->ambient().total_dim();
  Matrix out = Matrix::Zero(2 * n * d, 2 * n * d);
  for (int i = 0; i < n; ++i) {
    out.block((i * 2) * d, (i * 2) * d, d, d) = a.dense();
    out.block((i * 2 + 1) * d, (i * 2 + 1) * d, d, d) = b.dense();
  }
  return LevelElement::trusted(system, 2 * n, std::move(out));
}

QuotientData make_quotient_data(const ProjectionCandidate& c) {
  const SystemPtr& sys = c.system;
  const int d = sys->ambient().total_dim();
  const Matrix b = doubled_diagonal(sys, 1, c.p_perp, c.p).flat();
  const auto es = linalg::eigh(b);
  const double thr = 1e-9 * std::max(1.0, es.values.cwiseAbs().maxCoeff());
  Matrix pk = Matrix::Zero(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) <= thr) pk += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }

  // Real basis of M_2(V)_h: diagonal entries from V_h, the (0,1) entry complex.
  std::vector<Matrix> gens;
  const auto& ortho = sys->orthonormal_basis();
  for (int a = 0; a < 2; ++a) {
    for (const Matrix& o : ortho) {
      Matrix g = Matrix::Zero(2 * d, 2 * d);
      g.block(a * d, a * d, d, d) = o;
      gens.push_back(g);
    }
  }
  for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
    for (const Matrix& o : ortho) {
      Matrix g = Matrix::Zero(2 * d, 2 * d);
      g.block(0, d, d, d) = phase * o;
      g.block(d, 0, d, d) = std::conj(phase) * o;
      gens.push_back(g);
    }
  }
  const Eigen::Index rows = 2 * pk.size();
  RealMatrix m(rows, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Matrix img = pk * gens[j] * pk;
    for (Eigen::Index i = 0; i < img.size(); ++i) {
      m(i, j) = img.data()[i].real();
      m(img.size() + i, j) = img.data()[i].imag();
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double svthr = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  QuotientData out{c, {}};
  for (Eigen::Index j = 0; j < svd.matrixV().cols(); ++j) {
    if (j < sv.size() && sv(j) > svthr) continue;
    Matrix x = Matrix::Zero(2 * d, 2 * d);
    for (std::size_t g = 0; g < gens.size(); ++g) x += svd.matrixV()(g, j) * gens[g];
    out.kernel_span.push_back(LevelElement::trusted(sys, 2, linalg::hermitian_part(x)));
  }
  return out;
}

Verdict cp_cone_member(const LevelElement& x, const ProjectionCandidate& c, double eps,
                       double tol, const CpConeOptions& opts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kNonPositiveEps, "eps must be positive");
  if (x.level() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "doubled presentation has even level");
  }
  if (!(x.system()->ambient() == c.system->ambient())) {
    throw Error(ErrorCode::kAmbientMismatch, "element and candidate ambients differ");
  }
  const int n = x.level() / 2;
  const Matrix a = doubled_diagonal(x.system(), n, c.p, c.p_perp).flat();
  const Matrix b = doubled_diagonal(x.system(), n, c.p_perp, c.p).flat();
  const TSearch ts = search_t(x, a, b, eps, tol, opts);
  Verdict v;
  v.status = ts.status;
  v.diagnostics.iterations = ts.evaluations;
  v.diagnostics.best_objective = ts.min_eigenvalue;
  v.diagnostics.values.emplace_back("t", ts.t);
  if (ts.status != Status::kUndecided) {
    v.certificate = CpConeCertificate{eps,         ts.t, ts.min_eigenvalue, ts.exhausted,
                                      ts.kernel_witness, ts.kernel_value};
  }
  return v;
}

Verdict is_abstract_projection(const ProjectionCandidate& c, int k, double tol,
                               const ProjectionOptions& opts) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  for (double eps : opts.eps_schedule) {
    if (!(eps > 0.0)) throw Error(ErrorCode::kNonPositiveEps, "schedule entries must be positive");
  }
  const double eig_tol = tolerances().eig_tol;
  if (min_eigenvalue(c.p) < -eig_tol || min_eigenvalue(c.p_perp) < -eig_tol) {
    throw Error(ErrorCode::kNotPositiveContraction, "p must satisfy 0 <= p <= e");
  }
  const SystemPtr sys = make_system(c.system->with_k(k));
  const ProjectionCandidate ck{sys, c.p, c.p_perp};
  const BlockSpace& space = sys->ambient();
  const double defect = c.idempotency_defect();
  Verdict v;
  v.diagnostics.values.emplace_back("idempotency_defect", defect);
  if (defect <= tolerances().proj_tol && space.max_block_dim() <= k) {
    v.status = Status::kMember;
    v.certificate = SpectralProof{"idempotent", defect};
    v.diagnostics.best_objective = defect;
    return v;
  }

  // Candidates x = -I_k (x) q with q >= 0 supported where p is strictly
  // between 0 and 1; large t repairs them there.
  std::vector<Matrix> qs;
  {
    const auto es = linalg::eigh(c.p.dense());
    const double gap = kSpectralGap;
    Matrix q = Matrix::Zero(space.total_dim(), space.total_dim());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (es.values(i) > gap && es.values(i) < 1.0 - gap) {
        q += es.vectors.col(i) * es.vectors.col(i).adjoint();
      }
    }
    qs.push_back(space.mask(q));
    qs.push_back(Matrix::Identity(space.total_dim(), space.total_dim()));
    const Matrix pp = c.p.dense() - c.p.dense() * c.p.dense();
    if (pp.norm() > 0.0) qs.push_back(space.mask(pp) / pp.norm());
  }

  std::vector<double> schedule = opts.eps_schedule;
  std::sort(schedule.begin(), schedule.end());
  for (const Matrix& q : qs) {
    const SpanProjection sp = sys->project(linalg::hermitian_part(q));
    const HermitianElement qe = HermitianElement::from_dense(space, sp.projection);
    const LevelElement x = amplify(LevelElement::from_element(sys, qe * -1.0), k);
    const double lam = min_eigenvalue(x);
    if (!(lam < -tol)) continue;
    const LevelElement x2 = j2_image(x);
    ProjectionRefutation ref;
    ref.x = x.flat();
    ref.x_min_eigenvalue = lam;
    bool ok = true;
    for (double eps : schedule) {
      const Verdict cv = cp_cone_member(x2, ck, eps, tol, opts.cone);
      v.diagnostics.iterations += cv.diagnostics.iterations;
      if (!cv.member()) {
        ok = false;
        break;
      }
      ref.eps_t.emplace_back(eps, std::get<CpConeCertificate>(cv.certificate).t);
    }
    if (!ok) continue;
    const Matrix a = doubled_diagonal(sys, k, c.p, c.p_perp).flat();
    const Matrix b = doubled_diagonal(sys, k, c.p_perp, c.p).flat();
    const TSearch zero = search_t(x2, a, b, 0.0, tol, opts.cone);
    ref.feasible_at_zero_eps = zero.status == Status::kMember;
    ref.t_at_zero_eps = ref.feasible_at_zero_eps ? zero.t : 0.0;
    std::reverse(ref.eps_t.begin(), ref.eps_t.end());  // schedule order, largest first
    v.status = Status::kNotMember;
    v.diagnostics.best_objective = lam;
    v.certificate = std::move(ref);
    return v;
  }
  v.status = Status::kUndecided;
  return v;
}

bool check_projection_refutation(const ProjectionRefutation& r, const ProjectionCandidate& c,
                                 int k, double tol) {
  const SystemPtr sys = make_system(c.system->with_k(k));
  const int d = sys->ambient().total_dim();
  if (r.x.rows() != k * d) return false;
  const LevelElement x(sys, k, r.x);
  if (!(min_eigenvalue(x) < -tol)) return false;
  const Matrix x2 = j2_image(x).flat();
  const Matrix a = doubled_diagonal(sys, k, c.p, c.p_perp).flat();
  const Matrix b = doubled_diagonal(sys, k, c.p_perp, c.p).flat();
  if (r.eps_t.empty()) return false;
  for (const auto& [eps, t] : r.eps_t) {
    if (!(eps > 0.0) || t < 0.0) return false;
    if (linalg::min_eigenvalue(x2 + eps * a + t * b) < -tol) return false;
  }
  if (r.feasible_at_zero_eps && linalg::min_eigenvalue(x2 + r.t_at_zero_eps * b) < -tol) {
    return false;
  }
  return true;
}

}  // namespace matorder
