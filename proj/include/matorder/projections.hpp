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

#include <vector>

#include "matorder/core.hpp"
#include "matorder/verdict.hpp"

namespace matorder {

// A positive contraction p in V together with p_perp = e - p.
struct ProjectionCandidate {
  SystemPtr system;
  HermitianElement p;
  HermitianElement p_perp;

  // Throws NotPositiveContraction unless 0 <= p <= e at level one.
  static ProjectionCandidate make(SystemPtr system, const HermitianElement& p);
  double idempotency_defect() const;  // ||p^2 - p||_F in the ambient
};

// x (x) J_2 for x in M_n(V), at level 2n with doubled index i * 2 + a.
LevelElement j2_image(const LevelElement& x);
// pi_p(x) = x (x) J_2, the coset representative.
LevelElement pi_p_apply(const HermitianElement& x, const ProjectionCandidate& c);
// I_n (x) (a (+) b) at level 2n.
LevelElement doubled_diagonal(const SystemPtr& system, int n, const HermitianElement& a,
                              const HermitianElement& b);

struct QuotientData {
  ProjectionCandidate candidate;
  // Real basis of {x in M_2(V)_h : x and -x lie in C(p)_1}; these are the x whose
  // compression to ker(p_perp (+) p) vanishes.
  std::vector<LevelElement> kernel_span;
};
QuotientData make_quotient_data(const ProjectionCandidate& c);

struct CpConeOptions {
  double t_max = 1e6;
  int bisection_steps = 60;
  SearchOptions search;  // for level-2n refutations outside the exact regime
};

// Is there t in [0, t_max] with
//   x + eps I (x) (p (+) p_perp) + t I (x) (p_perp (+) p)
// in the k-minimal cone at level 2n (k taken from x's system)?
Verdict cp_cone_member(const LevelElement& x, const ProjectionCandidate& c, double eps,
                       double tol, const CpConeOptions& opts = {});

struct ProjectionOptions {
  std::vector<double> eps_schedule = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  CpConeOptions cone;
};

Verdict is_abstract_projection(const ProjectionCandidate& c, int k, double tol,
                               const ProjectionOptions& opts = {});

// Re-checks a NOT_PROJECTION certificate from scratch.
bool check_projection_refutation(const ProjectionRefutation& r, const ProjectionCandidate& c,
                                 int k, double tol);

}  // namespace matorder
