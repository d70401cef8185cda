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
#include <string>
#include <utility>
#include <vector>

#include "matorder/core.hpp"

namespace matorder {

// p(ab|xy) for n inputs and m outputs per party, stored at
// ((x * n + y) * m + a) * m + b.
struct Correlation {
  int n = 0;
  int m = 0;
  std::vector<double> p;

  static Correlation zeros(int n, int m);
  double operator()(int x, int y, int a, int b) const { return p[index(x, y, a, b)]; }
  double& at(int x, int y, int a, int b) { return p[index(x, y, a, b)]; }
  std::size_t index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * n + y) * m + a) * m + b;
  }
  // Throws InvalidArgument on negative entries or rows not summing to one.
  void validate() const;
};

struct Marginals {
  std::vector<std::vector<double>> pa;  // [x][a], averaged over y
  std::vector<std::vector<double>> pb;  // [y][b], averaged over x
  double max_signalling = 0.0;
  bool nonsignalling = false;
};

Marginals check_nonsignalling(const Correlation& c, double ns_tol);

// Real coefficients c[x][y][a][b] with the Correlation layout.
struct BellFunctional {
  int n = 0;
  int m = 0;
  std::vector<double> c;

  double operator()(int x, int y, int a, int b) const {
    return c[((static_cast<std::size_t>(x) * n + y) * m + a) * m + b];
  }
};

BellFunctional chsh_functional();
double bell_value(const BellFunctional& f, const Correlation& c);

// Commuting PVMs E[x][a], F[y][b] and a unit vector eta, all in one BlockSpace
// with blocks no larger than k.
struct Strategy {
  BlockSpace ambient{std::vector<int>{1}};
  int k = 1;
  Vector eta;
  std::vector<std::vector<Matrix>> e;
  std::vector<std::vector<Matrix>> f;

  int inputs() const { return static_cast<int>(e.size()); }
  int outputs() const { return e.empty() ? 0 : static_cast<int>(e.front().size()); }
  // Empty when valid, otherwise one line per failed invariant.
  std::vector<std::string> violations(double tol = 1e-9) const;
  void validate(double tol = 1e-9) const;  // throws InvalidStrategy
};

// psi on C^dA (x) C^dB with local PVMs; emits E = A (x) I and F = I (x) B on
// a single block of size dA * dB.
Strategy tensor_strategy(const Vector& psi, const std::vector<std::vector<Matrix>>& alice,
                         const std::vector<std::vector<Matrix>>& bob);

// Deterministic assignment on a 1-dimensional ambient.
Strategy deterministic_strategy(const std::vector<int>& alice, const std::vector<int>& bob, int m);

// The standard two-qubit CHSH strategy.
Strategy chsh_optimal_strategy();

Correlation correlation_from_strategy(const Strategy& s);

struct LocalBound {
  double value = 0.0;
  std::vector<int> alice;
  std::vector<int> bob;
};
// Exact maximum over deterministic strategies; CapExceeded when m^(2n) > cap.
LocalBound local_bound(const BellFunctional& f, double enumeration_cap = 1e8);

struct SeesawResult {
  double value = 0.0;
  Strategy strategy;
  int best_restart = 0;
  std::vector<double> restart_values;
  long iterations = 0;
};

// Alternating optimization over strategies in (+) M_{d_i}, d_i <= k.
SeesawResult seesaw_optimize(const BellFunctional& f, int k, const std::vector<int>& block_dims,
                             int restarts, int iters, std::uint64_t seed, int threads = 1);

struct QuantumKAOUWitness {
  SystemPtr system;
  int k = 0;
  std::vector<Matrix> generators;  // Q(ab|xy) in Correlation layout
  Matrix state;                    // density of the vector state
  Correlation table;               // state applied to the generators
  double unit_defect = 0.0;        // max_xy || sum_ab Q - e ||
  double marginal_defect = 0.0;
  double idempotency_defect = 0.0;
};

QuantumKAOUWitness realize_quantum_kaou(const Strategy& s);

Correlation mix_correlations(const std::vector<std::pair<double, Correlation>>& parts);

}  // namespace matorder
