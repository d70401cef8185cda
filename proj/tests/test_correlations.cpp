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

#include "matorder/correlations.hpp"
#include "matorder/random.hpp"
#include "oracles.hpp"

namespace matorder {
namespace {

// Brute force over every pair of deterministic response functions.
double brute_local(const BellFunctional& f) {
  const int n = f.n, m = f.m;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  double best = -1e300;
  for (int ca = 0; ca < total; ++ca)
    for (int cb = 0; cb < total; ++cb) {
      double v = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int a = ca, b = cb;
          for (int i = 0; i < x; ++i) a /= m;
          for (int i = 0; i < y; ++i) b /= m;
          v += f(x, y, a % m, b % m);
        }
      best = std::max(best, v);
    }
  return best;
}

BellFunctional random_functional(int n, int m, Rng& rng) {
  BellFunctional f{n, m, std::vector<double>(n * n * m * m)};
  for (double& c : f.c) c = rng.gaussian();
  return f;
}

Strategy random_qubit_strategy(Rng& rng) {
  std::vector<std::vector<Matrix>> alice, bob;
  for (int x = 0; x < 2; ++x) {
    Vector u = rng.unit_vector(2), w = rng.unit_vector(2);
    Matrix pa = u * u.adjoint(), pb = w * w.adjoint();
    alice.push_back({pa, Matrix::Identity(2, 2) - pa});
    bob.push_back({pb, Matrix::Identity(2, 2) - pb});
  }
  return tensor_strategy(rng.unit_vector(4), alice, bob);
}

TEST(Correlation, ShapeAndValidate) {
  Correlation c = Correlation::zeros(2, 3);
  EXPECT_EQ(c.p.size(), 36u);
  EXPECT_EQ(c.index(1, 0, 2, 1), ((1u * 2 + 0) * 3 + 2) * 3 + 1);
  try {
    c.validate();  // rows sum to zero
    ADD_FAILURE();
  } catch (const Error&) {
  }
}

TEST(Nonsignalling, PrBox) {
  Correlation c = Correlation::zeros(2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.at(x, y, a, b) = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
  Marginals m = check_nonsignalling(c, 1e-9);
  EXPECT_TRUE(m.nonsignalling);
  for (const auto& row : m.pa)
    for (double v : row) EXPECT_NEAR(v, 0.5, 1e-15);
  // PR box beats every quantum strategy
  EXPECT_NEAR(bell_value(chsh_functional(), c), 4.0, 1e-14);
  c.at(0, 0, 0, 0) += 0.1;
  c.at(0, 0, 1, 1) -= 0.1;
  Marginals bad = check_nonsignalling(c, 1e-9);
  EXPECT_FALSE(bad.nonsignalling);
  EXPECT_NEAR(bad.max_signalling, 0.1, 1e-12);
}

TEST(Nonsignalling, StrategyTables) {
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    Marginals m = check_nonsignalling(correlation_from_strategy(random_qubit_strategy(rng)), 1e-9);
    EXPECT_TRUE(m.nonsignalling);
    EXPECT_LE(m.max_signalling, 1e-10);
  }
}

TEST(Strategy, Deterministic) {
  Strategy s = deterministic_strategy({0, 1}, {1, 1}, 2);
  Correlation c = correlation_from_strategy(s);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          EXPECT_EQ(c(x, y, a, b), (a == x && b == 1) ? 1.0 : 0.0);
}

TEST(Strategy, ChshOptimalCorrelators) {
  Correlation c = correlation_from_strategy(chsh_optimal_strategy());
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double corr = c(x, y, 0, 0) + c(x, y, 1, 1) - c(x, y, 0, 1) - c(x, y, 1, 0);
      EXPECT_NEAR(std::abs(corr), 1 / std::sqrt(2.0), 1e-12);
    }
  EXPECT_NEAR(bell_value(chsh_functional(), c), 2 * std::sqrt(2.0), 1e-9);
}

TEST(Strategy, UniformTable) {
  // Computational basis for Alice on |+>, Hadamard basis for Bob on |0>.
  Matrix h = Matrix::Ones(2, 2);
  h(1, 1) = -1;
  h /= std::sqrt(2.0);
  std::vector<std::vector<Matrix>> alice(2), bob(2);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      Matrix pa = Matrix::Zero(2, 2);
      pa(a, a) = 1;
      alice[x].push_back(pa);
      bob[x].push_back(h * pa * h.adjoint());
    }
  Vector eta = Vector::Zero(4);
  eta(0) = eta(2) = 1 / std::sqrt(2.0);
  Correlation c = correlation_from_strategy(tensor_strategy(eta, alice, bob));
  for (double v : c.p) EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(Strategy, Violations) {
  Strategy s = chsh_optimal_strategy();
  EXPECT_TRUE(s.violations().empty());
  s.e[0][0] *= 0.5;
  EXPECT_FALSE(s.violations().empty());
  try {
    s.validate();
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidStrategy);
  }
}

TEST(Bell, Values) {
  BellFunctional zero{2, 2, std::vector<double>(16, 0.0)};
  EXPECT_EQ(bell_value(zero, correlation_from_strategy(chsh_optimal_strategy())), 0.0);
  EXPECT_NEAR(bell_value(chsh_functional(),
                         correlation_from_strategy(deterministic_strategy({0, 0}, {0, 0}, 2))),
              2.0, 1e-15);
  try {
    bell_value(chsh_functional(), Correlation::zeros(3, 2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(LocalBound, Examples) {
  EXPECT_EQ(local_bound(chsh_functional()).value, 2.0);
  EXPECT_EQ(brute_local(chsh_functional()), 2.0);
  BellFunctional zero{2, 2, std::vector<double>(16, 0.0)};
  EXPECT_EQ(local_bound(zero).value, 0.0);
  BellFunctional ind{2, 2, std::vector<double>(16, 0.0)};
  ind.c[((1 * 2 + 1) * 2 + 1) * 2 + 1] = 1.0;
  EXPECT_EQ(local_bound(ind).value, 1.0);
}

TEST(LocalBound, MatchesBruteForce) {
  Rng rng(52);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 2, m = 2 + (t / 2) % 2;
    BellFunctional f = random_functional(n, m, rng);
    LocalBound lb = local_bound(f);
    EXPECT_NEAR(lb.value, brute_local(f), 1e-12);
    // the reported strategy attains the value
    Correlation c = correlation_from_strategy(deterministic_strategy(lb.alice, lb.bob, m));
    EXPECT_NEAR(bell_value(f, c), lb.value, 1e-12);
  }
}

TEST(LocalBound, Cap) {
  Rng rng(53);
  try {
    local_bound(random_functional(4, 4, rng), 100);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(Seesaw, Chsh) {
  SeesawResult q = seesaw_optimize(chsh_functional(), 4, {4}, 32, 200, 0);
  EXPECT_GE(q.value, 2 * std::sqrt(2.0) - 1e-3);
  EXPECT_NEAR(bell_value(chsh_functional(), correlation_from_strategy(q.strategy)), q.value, 1e-9);
  SeesawResult c = seesaw_optimize(chsh_functional(), 1, {1}, 8, 50, 0);
  EXPECT_NEAR(c.value, 2.0, 1e-9);
  BellFunctional zero{2, 2, std::vector<double>(16, 0.0)};
  EXPECT_EQ(seesaw_optimize(zero, 2, {2}, 4, 20, 0).value, 0.0);
}

TEST(Seesaw, NeverAboveLocalAtK1) {
  Rng rng(54);
  for (int t = 0; t < 4; ++t) {
    BellFunctional f = random_functional(2, 2, rng);
    EXPECT_LE(seesaw_optimize(f, 1, {1}, 4, 50, t).value, brute_local(f) + 1e-9);
  }
}

TEST(Seesaw, ThreadCountInvariant) {
  SeesawResult a = seesaw_optimize(chsh_functional(), 2, {2, 2}, 6, 60, 9, 1);
  SeesawResult b = seesaw_optimize(chsh_functional(), 2, {2, 2}, 6, 60, 9, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.restart_values, b.restart_values);
}

TEST(Realize, ChshOptimal) {
  Strategy s = chsh_optimal_strategy();
  QuantumKAOUWitness w = realize_quantum_kaou(s);
  EXPECT_EQ(w.generators.size(), 16u);
  Correlation c = correlation_from_strategy(s);
  for (std::size_t i = 0; i < c.p.size(); ++i) EXPECT_NEAR(w.table.p[i], c.p[i], 1e-10);
  EXPECT_LE(w.unit_defect, 1e-10);
  EXPECT_LE(w.idempotency_defect, 1e-10);
}

TEST(Realize, DeterministicAndBlocks) {
  QuantumKAOUWitness d = realize_quantum_kaou(deterministic_strategy({1, 0}, {0, 1}, 2));
  EXPECT_EQ(d.system->ambient().total_dim(), 1);
  for (const Matrix& q : d.generators) {
    const double v = q(0, 0).real();
    EXPECT_TRUE(std::abs(v) < 1e-15 || std::abs(v - 1) < 1e-15);
  }
  // Fixed PVM pair on M_2 (+) M_2, acting blockwise.
  Strategy s;
  s.ambient = BlockSpace({2, 2});
  s.k = 2;
  Vector eta = Vector::Zero(4);
  eta(0) = eta(3) = 1 / std::sqrt(2.0);
  s.eta = eta;
  Matrix p0 = oracle::diag({1, 0, 1, 0});
  Matrix one = Matrix::Identity(4, 4);
  s.e = {{p0, one - p0}, {p0, one - p0}};
  s.f = {{one, Matrix::Zero(4, 4)}, {one, Matrix::Zero(4, 4)}};
  QuantumKAOUWitness w = realize_quantum_kaou(s);
  EXPECT_EQ(w.system->ambient().block_dims(), (std::vector<int>{2, 2}));
  EXPECT_LE(w.system->ambient().max_block_dim(), w.k);
}

TEST(Mix, Examples) {
  Correlation p = correlation_from_strategy(chsh_optimal_strategy());
  Correlation one = mix_correlations({{1.0, p}});
  Correlation half = mix_correlations({{0.5, p}, {0.5, p}});
  for (std::size_t i = 0; i < p.p.size(); ++i) {
    EXPECT_NEAR(one.p[i], p.p[i], 1e-15);
    EXPECT_NEAR(half.p[i], p.p[i], 1e-15);
  }
  Correlation z = correlation_from_strategy(deterministic_strategy({0, 0}, {0, 0}, 2));
  Correlation o = correlation_from_strategy(deterministic_strategy({1, 1}, {1, 1}, 2));
  Correlation u = mix_correlations({{0.5, z}, {0.5, o}});
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_EQ(u(x, y, a, b), a == b ? 0.5 : 0.0);
}

TEST(Mix, Errors) {
  Correlation p = correlation_from_strategy(chsh_optimal_strategy());
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code([&] { mix_correlations({{0.7, p}}); }), ErrorCode::kBadWeights);
  EXPECT_EQ(code([&] { mix_correlations({{1.5, p}, {-0.5, p}}); }), ErrorCode::kBadWeights);
  EXPECT_EQ(code([&] { mix_correlations({{0.5, p}, {0.5, Correlation::zeros(3, 2)}}); }),
            ErrorCode::kShapeMismatch);
}

}  // namespace
}  // namespace matorder
