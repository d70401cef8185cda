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

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matorder/linalg.hpp"

namespace matorder {

enum class Status { kMember, kNotMember, kUndecided };

// Unit vector sum_j left.col(j) (x) right.col(j) of Schmidt rank <= k with
// value <w, x w>. A value below -tol refutes k-minimal membership.
struct KMinWitness {
  Matrix left;   // n x r, r <= k
  Matrix right;  // total_dim x r
  Vector vector;
  double value = 0.0;
};

// A unital completely positive map into M_k (Choi matrix on C^D (x) C^k,
// Tr_1 choi = I_k) and a unit vector v with v^* phi_n(x) v = value.
struct KStateWitness {
  Matrix choi;
  Vector vector;
  double value = 0.0;
  int k = 0;
};

struct KMaxTerm {
  Matrix beta;  // k x n
  Matrix s;     // flattened element of M_k(V), PSD
};

struct KMaxDecomposition {
  std::vector<KMaxTerm> terms;
  double slack = 0.0;  // || x - sum beta^* s beta ||_F
};

// y is k-block-positive at the ambient level and Tr(x y) = pairing < 0.
// kind "schmidt": y = schmidt_weight * I - psi psi^*, schmidt_weight equal to
// the sum of the k largest squared Schmidt coefficients of psi.
// kind "ppt": k = 1 and the partial transpose of y is PSD.
struct DualWitness {
  std::string kind;
  Matrix y;
  Vector psi;
  double schmidt_weight = 0.0;
  double pairing = 0.0;
};

struct SpectralProof {
  std::string regime;
  double min_eigenvalue = 0.0;
};

// Refutes k-positivity of a map: c is a trace-one PSD element of M_k(V) and
// z a unit vector with z^* phi_k(c) z = value < 0.
struct MapRefutation {
  Matrix input;
  Vector vector;
  double value = 0.0;
};

// Outcome of the t-search for x + eps I (x) (p (+) p_perp) + t I (x) (p_perp (+) p).
struct CpConeCertificate {
  double eps = 0.0;
  double t = 0.0;             // smallest feasible t found, or t_max when exhausted
  double min_eigenvalue = 0.0;  // at t
  bool exhausted = false;     // infeasible at t_max
  // Vector in the kernel of I (x) (p_perp (+) p) on which the form stays
  // negative for every t; empty when none was found.
  Vector kernel_witness;
  double kernel_value = 0.0;
};

// x lies in C[p] on the sampled eps schedule but is not positive.
struct ProjectionRefutation {
  Matrix x;  // flattened level-k element
  double x_min_eigenvalue = 0.0;
  std::vector<std::pair<double, double>> eps_t;  // (eps, feasible t)
  bool feasible_at_zero_eps = false;             // then every eps > 0 works too
  double t_at_zero_eps = 0.0;
};

using Certificate =
    std::variant<std::monostate, SpectralProof, KMinWitness, KStateWitness,
                 KMaxDecomposition, DualWitness, MapRefutation, CpConeCertificate,
                 ProjectionRefutation>;

struct Diagnostics {
  int restarts = 0;
  long iterations = 0;
  double best_objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, double>> values;
};

struct Verdict {
  Status status = Status::kUndecided;
  Certificate certificate;
  Diagnostics diagnostics;

  bool member() const { return status == Status::kMember; }
  bool refuted() const { return status == Status::kNotMember; }
  bool undecided() const { return status == Status::kUndecided; }
};

std::string certificate_kind(const Certificate& c);

// Status label used in reports for each kind of question.
enum class VerdictContext { kCone, kMap, kProjection };
std::string status_label(Status s, VerdictContext ctx);

struct SearchOptions {
  int restarts = 32;
  int max_iters = 500;
  std::uint64_t seed = 0;
  int threads = 1;
};

}  // namespace matorder
