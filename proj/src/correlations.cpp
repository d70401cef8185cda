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

#include "matorder/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "matorder/parallel.hpp"
#include "matorder/projections.hpp"
#include "matorder/random.hpp"
#include "matorder/verdict.hpp"

namespace matorder {

Correlation Correlation::zeros(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::kInvalidArgument, "n and m must be positive");
  Correlation c;
  c.n = n;
  c.m = m;
  c.p.assign(static_cast<std::size_t>(n) * n * m * m, 0.0);
  return c;
}

void Correlation::validate() const {
  if (n < 1 || m < 1 || p.size() != static_cast<std::size_t>(n) * n * m * m) {
    throw Error(ErrorCode::kShapeMismatch, "correlation table has the wrong shape");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double total = 0.0;
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const double v = (*this)(x, y, a, b);
          if (v < -1e-12) throw Error(ErrorCode::kInvalidArgument, "negative probability");
          total += v;
        }
      }
      if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::kInvalidArgument, "probabilities for an input pair must sum to 1");
      }
    }
  }
}

Marginals check_nonsignalling(const Correlation& c, double ns_tol) {
  c.validate();
  const int n = c.n;
  const int m = c.m;
  Marginals out;
  out.pa.assign(n, std::vector<double>(m, 0.0));
  out.pb.assign(n, std::vector<double>(m, 0.0));
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int a = 0; a < m; ++a) {
      std::vector<double> per_y(n, 0.0);
      for (int y = 0; y < n; ++y) {
        for (int b = 0; b < m; ++b) per_y[y] += c(x, y, a, b);
      }
      const auto [lo, hi] = std::minmax_element(per_y.begin(), per_y.end());
      worst = std::max(worst, *hi - *lo);
      for (double v : per_y) out.pa[x][a] += v / n;
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int b = 0; b < m; ++b) {
      std::vector<double> per_x(n, 0.0);
      for (int x = 0; x < n; ++x) {
        for (int a = 0; a < m; ++a) per_x[x] += c(x, y, a, b);
      }
      const auto [lo, hi] = std::minmax_element(per_x.begin(), per_x.end());
      worst = std::max(worst, *hi - *lo);
      for (double v : per_x) out.pb[y][b] += v / n;
    }
  }
  out.max_signalling = worst;
  out.nonsignalling = worst <= ns_tol;
  return out;
}

BellFunctional chsh_functional() {
  BellFunctional f{2, 2, std::vector<double>(16, 0.0)};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          f.c[((x * 2 + y) * 2 + a) * 2 + b] = ((a ^ b ^ (x & y)) != 0) ? -1.0 : 1.0;
        }
      }
    }
  }
  return f;
}

double bell_value(const BellFunctional& f, const Correlation& c) {
  if (f.n != c.n || f.m != c.m || f.c.size() != c.p.size()) {
    throw Error(ErrorCode::kShapeMismatch, "functional and table shapes differ");
  }
  double v = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i) v += f.c[i] * c.p[i];
  return v;
}

std::vector<std::string> Strategy::violations(double tol) const {
  std::vector<std::string> out;
  const int d = ambient.total_dim();
  if (ambient.max_block_dim() > k) out.push_back("ambient block larger than k");
  if (eta.size() != d) {
    out.push_back("eta has the wrong length");
    return out;
  }
  if (std::abs(eta.norm() - 1.0) > tol) out.push_back("eta is not a unit vector");
  if (e.empty() || e.size() != f.size()) {
    out.push_back("both parties need the same positive number of inputs");
    return out;
  }
  const std::size_t m = e.front().size();
  const Matrix id = linalg::identity(d);
  auto check_family = [&](const std::vector<std::vector<Matrix>>& fam, const char* name) {
    for (std::size_t x = 0; x < fam.size(); ++x) {
      if (fam[x].size() != m || m == 0) {
        out.push_back(std::string(name) + "[" + std::to_string(x) + "] has the wrong output count");
        continue;
      }
      Matrix total = Matrix::Zero(d, d);
      for (std::size_t a = 0; a < m; ++a) {
        const Matrix& p = fam[x][a];
        const std::string tag = std::string(name) + "[" + std::to_string(x) + "][" + std::to_string(a) + "]";
        if (p.rows() != d || p.cols() != d) {
          out.push_back(tag + " has the wrong size");
          continue;
        }
        if (ambient.off_block_norm(p) > tol) out.push_back(tag + " leaves the block structure");
        if (linalg::hermiticity_defect(p) > tol) out.push_back(tag + " is not hermitian");
        if ((p * p - p).norm() > tol) out.push_back(tag + " is not idempotent");
        total += p;
      }
      if ((total - id).norm() > tol) {
        out.push_back(std::string(name) + "[" + std::to_string(x) + "] does not resolve the unit");
      }
    }
  };
  check_family(e, "E");
  check_family(f, "F");
  if (!out.empty()) return out;
  for (std::size_t x = 0; x < e.size(); ++x) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t y = 0; y < f.size(); ++y) {
        for (std::size_t b = 0; b < m; ++b) {
          if ((e[x][a] * f[y][b] - f[y][b] * e[x][a]).norm() > tol) {
            out.push_back("E[" + std::to_string(x) + "][" + std::to_string(a) + "] and F[" +
                          std::to_string(y) + "][" + std::to_string(b) + "] do not commute");
          }
        }
      }
    }
  }
  return out;
}

void Strategy::validate(double tol) const {
  const auto v = violations(tol);
  if (v.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
  throw Error(ErrorCode::kInvalidStrategy, os.str());
}

Strategy tensor_strategy(const Vector& psi, const std::vector<std::vector<Matrix>>& alice,
                         const std::vector<std::vector<Matrix>>& bob) {
  if (alice.empty() || bob.empty() || alice.front().empty() || bob.front().empty()) {
    throw Error(ErrorCode::kInvalidStrategy, "empty measurement family");
  }
  const int da = static_cast<int>(alice.front().front().rows());
  const int db = static_cast<int>(bob.front().front().rows());
  if (psi.size() != da * db) throw Error(ErrorCode::kInvalidStrategy, "psi does not match dA * dB");
  Strategy s;
  s.ambient = BlockSpace::single(da * db);
  s.k = da * db;
  s.eta = psi;
  for (const auto& fam : alice) {
    s.e.emplace_back();
    for (const Matrix& p : fam) s.e.back().push_back(linalg::kron(p, linalg::identity(db)));
  }
  for (const auto& fam : bob) {
    s.f.emplace_back();
    for (const Matrix& p : fam) s.f.back().push_back(linalg::kron(linalg::identity(da), p));
  }
  return s;
}

Strategy deterministic_strategy(const std::vector<int>& alice, const std::vector<int>& bob, int m) {
  Strategy s;
  s.ambient = BlockSpace::single(1);
  s.k = 1;
  s.eta = Vector::Ones(1);
  auto fill = [m](const std::vector<int>& out) {
    std::vector<std::vector<Matrix>> fam;
    for (int v : out) {
      fam.emplace_back();
      for (int a = 0; a < m; ++a) fam.back().push_back(Matrix::Constant(1, 1, a == v ? 1.0 : 0.0));
    }
    return fam;
  };
  s.e = fill(alice);
  s.f = fill(bob);
  return s;
}

Strategy chsh_optimal_strategy() {
  auto pvm = [](double theta) {
    // Projectors onto the +1 / -1 eigenspaces of cos(theta) Z + sin(theta) X.
    Matrix obs(2, 2);
    obs << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
    const Matrix id = linalg::identity(2);
    return std::vector<Matrix>{(id + obs) / 2.0, (id - obs) / 2.0};
  };
  const double pi = std::acos(-1.0);
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return tensor_strategy(psi, {pvm(0.0), pvm(pi / 2)}, {pvm(pi / 4), pvm(-pi / 4)});
}

Correlation correlation_from_strategy(const Strategy& s) {
  s.validate();
  const int n = s.inputs();
  const int m = s.outputs();
  Correlation c = Correlation::zeros(n, m);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int a = 0; a < m; ++a) {
        const Vector ea = s.e[x][a] * s.eta;
        for (int b = 0; b < m; ++b) c.at(x, y, a, b) = ea.dot(s.f[y][b] * s.eta).real();
      }
    }
  }
  return c;
}

LocalBound local_bound(const BellFunctional& f, double enumeration_cap) {
  const int n = f.n;
  const int m = f.m;
  if (std::pow(static_cast<double>(m), 2.0 * n) > enumeration_cap) {
    throw Error(ErrorCode::kCapExceeded, "m^(2n) exceeds the enumeration cap");
  }
  LocalBound best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> alice(n, 0);
  std::vector<int> bob(n, 0);
  while (true) {
    double v = 0.0;
    for (int y = 0; y < n; ++y) {
      double top = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < m; ++b) {
        double s = 0.0;
        for (int x = 0; x < n; ++x) s += f(x, y, alice[x], b);
        if (s > top) {
          top = s;
          bob[y] = b;
        }
      }
      v += top;
    }
    if (v > best.value) {
      best.value = v;
      best.alice = alice;
      best.bob = bob;
    }
    int pos = 0;
    while (pos < n && ++alice[pos] == m) alice[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

namespace {

struct LocalRun {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<Matrix>> a;
  std::vector<std::vector<Matrix>> b;
  Vector psi;
  long iterations = 0;
};

std::vector<Matrix> random_pvm(int d, int m, Rng& rng) {
  const Matrix u = rng.unitary(d);
  std::vector<Matrix> out(m, Matrix::Zero(d, d));
  for (int c = 0; c < d; ++c) {
    const int a = rng.uniform_int(0, m - 1);
    out[a] += u.col(c) * u.col(c).adjoint();
  }
  return out;
}

// Projector onto the span of eigenvectors of h with eigenvalue > 0.
Matrix positive_projector(const Matrix& h) {
  const auto es = linalg::eigh(linalg::hermitian_part(h));
  Matrix p = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.0) p += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  return p;
}

// Improves sum_a Tr(P_a M_a) over PVMs by exact two-outcome moves.
void improve_pvm(std::vector<Matrix>& p, const std::vector<Matrix>& mm) {
  const int m = static_cast<int>(p.size());
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const Matrix s = p[a] + p[b];
        const auto es = linalg::eigh(linalg::hermitian_part(s));
        std::vector<Eigen::Index> cols;
        for (Eigen::Index i = 0; i < es.values.size(); ++i) {
          if (es.values(i) > 0.5) cols.push_back(i);
        }
        if (cols.empty()) continue;
        Matrix r(s.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i) r.col(i) = es.vectors.col(cols[i]);
        const Matrix plus = r * positive_projector(r.adjoint() * (mm[a] - mm[b]) * r) * r.adjoint();
        const Matrix whole = r * r.adjoint();
        p[a] = linalg::hermitian_part(plus);
        p[b] = linalg::hermitian_part(whole - plus);
      }
    }
  }
}

Matrix bell_operator(const BellFunctional& f, const std::vector<std::vector<Matrix>>& a,
                     const std::vector<std::vector<Matrix>>& b) {
  const int da = static_cast<int>(a[0][0].rows());
  const int db = static_cast<int>(b[0][0].rows());
  Matrix w = Matrix::Zero(da * db, da * db);
  for (int x = 0; x < f.n; ++x) {
    for (int y = 0; y < f.n; ++y) {
      for (int i = 0; i < f.m; ++i) {
        for (int j = 0; j < f.m; ++j) {
          const double c = f(x, y, i, j);
          if (c != 0.0) w += c * linalg::kron(a[x][i], b[y][j]);
        }
      }
    }
  }
  return linalg::hermitian_part(w);
}

int balanced_divisor(int d) {
  int best = 1;
  for (int q = 1; q * q <= d; ++q) {
    if (d % q == 0) best = q;
  }
  return best;
}

LocalRun seesaw_block(const BellFunctional& f, int d, Rng& rng, int iters) {
  const int da = balanced_divisor(d);
  const int db = d / da;
  LocalRun run;
  for (int x = 0; x < f.n; ++x) run.a.push_back(random_pvm(da, f.m, rng));
  for (int y = 0; y < f.n; ++y) run.b.push_back(random_pvm(db, f.m, rng));
  auto [v0, psi] = linalg::max_eigenpair(bell_operator(f, run.a, run.b));
  run.value = v0;
  run.psi = psi;
  for (int it = 0; it < iters; ++it) {
    const Matrix rho = run.psi * run.psi.adjoint();
    for (int x = 0; x < f.n; ++x) {
      std::vector<Matrix> mm(f.m, Matrix::Zero(da, da));
      for (int i = 0; i < f.m; ++i) {
        Matrix op = Matrix::Zero(db, db);
        for (int y = 0; y < f.n; ++y) {
          for (int j = 0; j < f.m; ++j) op += f(x, y, i, j) * run.b[y][j];
        }
        mm[i] = linalg::partial_trace_second(linalg::kron(linalg::identity(da), op) * rho, da, db);
        mm[i] = linalg::hermitian_part(mm[i]);
      }
      improve_pvm(run.a[x], mm);
    }
    for (int y = 0; y < f.n; ++y) {
      std::vector<Matrix> mm(f.m, Matrix::Zero(db, db));
      for (int j = 0; j < f.m; ++j) {
        Matrix op = Matrix::Zero(da, da);
        for (int x = 0; x < f.n; ++x) {
          for (int i = 0; i < f.m; ++i) op += f(x, y, i, j) * run.a[x][i];
        }
        mm[j] = linalg::partial_trace_first(linalg::kron(op, linalg::identity(db)) * rho, da, db);
        mm[j] = linalg::hermitian_part(mm[j]);
      }
      improve_pvm(run.b[y], mm);
    }
    auto [v, next] = linalg::max_eigenpair(bell_operator(f, run.a, run.b));
    run.psi = next;
    run.iterations = it + 1;
    const double gain = v - run.value;
    run.value = std::max(run.value, v);
    if (gain <= 1e-13 * std::max(1.0, std::abs(v))) break;
  }
  return run;
}

struct RestartRun {
  double value = -std::numeric_limits<double>::infinity();
  int block = 0;
  LocalRun run;
  long iterations = 0;
};

}  // namespace

SeesawResult seesaw_optimize(const BellFunctional& f, int k, const std::vector<int>& block_dims,
                             int restarts, int iters, std::uint64_t seed, int threads) {
  if (f.n < 1 || f.m < 1 || f.c.size() != static_cast<std::size_t>(f.n) * f.n * f.m * f.m) {
    throw Error(ErrorCode::kShapeMismatch, "functional has the wrong shape");
  }
  const BlockSpace space(block_dims);
  if (space.max_block_dim() > k) {
    throw Error(ErrorCode::kInvalidArgument, "block dimensions must not exceed k");
  }
  restarts = std::max(restarts, 1);
  auto runs = run_indexed<RestartRun>(restarts, threads, [&](int r) {
    Rng rng(split_seed(seed, r));
    RestartRun out;
    for (int blk = 0; blk < space.num_blocks(); ++blk) {
      LocalRun lr = seesaw_block(f, space.block_dims()[blk], rng, iters);
      out.iterations += lr.iterations;
      if (lr.value > out.value) {
        out.value = lr.value;
        out.block = blk;
        out.run = std::move(lr);
      }
    }
    return out;
  });

  SeesawResult res;
  int best = 0;
  for (int r = 0; r < restarts; ++r) {
    res.restart_values.push_back(runs[r].value);
    res.iterations += runs[r].iterations;
    if (runs[r].value > runs[best].value) best = r;
  }
  res.best_restart = best;

  // Assemble the commuting form; unused blocks get the trivial PVM.
  const RestartRun& w = runs[best];
  const int total = space.total_dim();
  Strategy s;
  s.ambient = space;
  s.k = k;
  s.eta = Vector::Zero(total);
  const int off = space.block_offset(w.block);
  const int d = space.block_dims()[w.block];
  s.eta.segment(off, d) = w.run.psi;
  const int da = static_cast<int>(w.run.a[0][0].rows());
  const int db = static_cast<int>(w.run.b[0][0].rows());
  auto embed = [&](const std::vector<std::vector<Matrix>>& fam, bool left) {
    std::vector<std::vector<Matrix>> out;
    for (const auto& pv : fam) {
      out.emplace_back();
      for (int a = 0; a < f.m; ++a) {
        Matrix full = Matrix::Zero(total, total);
        for (int blk = 0; blk < space.num_blocks(); ++blk) {
          const int o = space.block_offset(blk);
          const int db_blk = space.block_dims()[blk];
          if (blk == w.block) {
            full.block(o, o, d, d) = left ? linalg::kron(pv[a], linalg::identity(db))
                                          : linalg::kron(linalg::identity(da), pv[a]);
          } else if (a == 0) {
            full.block(o, o, db_blk, db_blk) = linalg::identity(db_blk);
          }
        }
        out.back().push_back(full);
      }
    }
    return out;
  };
  s.e = embed(w.run.a, true);
  s.f = embed(w.run.b, false);
  res.strategy = std::move(s);
  res.value = bell_value(f, correlation_from_strategy(res.strategy));
  return res;
}

QuantumKAOUWitness realize_quantum_kaou(const Strategy& s) {
  s.validate();
  const int n = s.inputs();
  const int m = s.outputs();
  const BlockSpace& space = s.ambient;
  const int d = space.total_dim();
  const Matrix id = linalg::identity(d);
  QuantumKAOUWitness w;
  w.k = s.k;
  w.state = s.eta * s.eta.adjoint();
  w.table = Correlation::zeros(n, m);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Matrix total = Matrix::Zero(d, d);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const Matrix q = linalg::hermitian_part(s.e[x][a] * s.f[y][b]);
          w.generators.push_back(q);
          total += q;
          w.idempotency_defect = std::max(w.idempotency_defect, (q * q - q).norm());
        }
      }
      w.unit_defect = std::max(w.unit_defect, (total - id).norm());
    }
  }
  auto q_at = [&](int x, int y, int a, int b) -> const Matrix& {
    return w.generators[w.table.index(x, y, a, b)];
  };
  // E(a|x) = sum_b Q(ab|xy) must not depend on y, and symmetrically for F.
  for (int x = 0; x < n; ++x) {
    for (int a = 0; a < m; ++a) {
      Matrix first;
      for (int y = 0; y < n; ++y) {
        Matrix e = Matrix::Zero(d, d);
        for (int b = 0; b < m; ++b) e += q_at(x, y, a, b);
        if (y == 0) first = e;
        else w.marginal_defect = std::max(w.marginal_defect, (e - first).norm());
      }
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int b = 0; b < m; ++b) {
      Matrix first;
      for (int x = 0; x < n; ++x) {
        Matrix f = Matrix::Zero(d, d);
        for (int a = 0; a < m; ++a) f += q_at(x, y, a, b);
        if (x == 0) first = f;
        else w.marginal_defect = std::max(w.marginal_defect, (f - first).norm());
      }
    }
  }

  // Span {e} u {Q}; keep an independent subset as the basis.
  std::vector<HermitianElement> basis;
  std::vector<Matrix> ortho;
  auto consider = [&](const Matrix& q) {
    Matrix r = q;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& o : ortho) r -= linalg::frobenius_inner(o, r) * o;
    }
    if (r.norm() <= 1e-8 * std::max(1.0, q.norm())) return;
    ortho.push_back(linalg::hermitian_part(r) / r.norm());
    basis.push_back(HermitianElement::from_dense(space, q));
  };
  consider(id);
  for (const Matrix& q : w.generators) consider(q);
  w.system = make_system(ConcreteSystem(space, basis, s.k));

  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    const ProjectionCandidate cand =
        ProjectionCandidate::make(w.system, HermitianElement::from_dense(space, w.generators[i]));
    const Verdict v = is_abstract_projection(cand, s.k, 1e-9);
    if (!v.member()) {
      throw Error(ErrorCode::kGeneratorNotProjection,
                  "generator " + std::to_string(i) + " fails the projection fast path");
    }
  }
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    w.table.p[i] = (w.state * w.generators[i]).trace().real();
  }
  return w;
}

Correlation mix_correlations(const std::vector<std::pair<double, Correlation>>& parts) {
  if (parts.empty()) throw Error(ErrorCode::kBadWeights, "nothing to mix");
  double total = 0.0;
  for (const auto& [w, c] : parts) {
    if (!(w >= -1e-12)) throw Error(ErrorCode::kBadWeights, "weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw Error(ErrorCode::kBadWeights, "weights must sum to 1");
  const int n = parts.front().second.n;
  const int m = parts.front().second.m;
  Correlation out = Correlation::zeros(n, m);
  for (const auto& [w, c] : parts) {
    if (c.n != n || c.m != m || c.p.size() != out.p.size()) {
      throw Error(ErrorCode::kShapeMismatch, "tables have different shapes");
    }
    for (std::size_t i = 0; i < out.p.size(); ++i) out.p[i] += w * c.p[i];
  }
  out.validate();
  return out;
}

}  // namespace matorder
