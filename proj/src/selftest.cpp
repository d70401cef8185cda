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

#include "matorder/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "matorder/algebra.hpp"
#include "matorder/cones.hpp"
#include "matorder/correlations.hpp"
#include "matorder/projections.hpp"
#include "matorder/random.hpp"

namespace matorder {

namespace {

Matrix swap_operator(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

Correlation pr_box() {
  Correlation c = Correlation::zeros(2, 2);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) c.at(x, y, a, b) = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
      }
    }
  }
  return c;
}

}  // namespace

SelftestOutcome run_selftest(std::uint64_t seed, int threads) {
  SelftestOutcome out;
  out.result = {{"seed", seed}, {"checks", Json::array()}};
  out.timings = Json::object();
  int passed = 0;
  int total = 0;
  SearchOptions search;
  search.seed = seed;
  search.threads = threads;

  auto check = [&](const std::string& name, const std::function<bool(Json&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Json values = Json::object();
    bool ok = false;
    try {
      ok = body(values);
    } catch (const std::exception& e) {
      values["error"] = e.what();
    }
    out.timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.result["checks"].push_back({{"name", name}, {"passed", ok}, {"values", values}});
    ++total;
    if (ok) ++passed;
  };

  const SystemPtr m2 = make_system(ConcreteSystem::full(BlockSpace::single(2), 2));

  check("swap_kmin", [&](Json& v) {
    const LevelElement f(m2, 2, swap_operator(2));
    const double k1 = kmin_best_objective(f, 1, 32, seed);
    const Verdict k2 = is_kmin_member(f, 2, 1e-8, search);
    const double w = std::get<KMinWitness>(k2.certificate).value;
    v["k1_objective"] = k1;
    v["k2_witness_value"] = w;
    return k1 >= -1e-6 && k2.refuted() && std::abs(w + 1.0) <= 1e-6 &&
           check_kmin_witness(std::get<KMinWitness>(k2.certificate), f, 2, 1e-8);
  });

  check("transpose_map", [&](Json& v) {
    const LinearMap t = map_from_function(m2, m2, [](const Matrix& a) { return Matrix(a.transpose()); });
    const Verdict k2 = is_map_k_positive(t, 2, 1e-8, search);
    const Verdict k1 = is_map_k_positive(t, 1, 1e-8, search);
    v["k2_value"] = k2.diagnostics.best_objective;
    v["k1_status"] = status_label(k1.status, VerdictContext::kMap);
    return k2.refuted() && k2.diagnostics.best_objective <= -0.49 && k1.member();
  });

  check("kmax_entangled_projector", [&](Json& v) {
    Matrix phi = Matrix::Zero(4, 4);
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    const LevelElement x(m2, 2, phi);
    const Verdict r = is_kmax_member(x, 1, 1e-8, search);
    v["pairing"] = r.diagnostics.best_objective;
    return r.refuted() && check_dual_witness(std::get<DualWitness>(r.certificate), x, 1, 1e-8);
  });

  check("projection_half_unit", [&](Json& v) {
    const auto c = ProjectionCandidate::make(m2, HermitianElement::identity(m2->ambient()) * 0.5);
    const Verdict r = is_abstract_projection(c, 2, 1e-8);
    v["status"] = status_label(r.status, VerdictContext::kProjection);
    return r.refuted() && check_projection_refutation(std::get<ProjectionRefutation>(r.certificate), c, 2, 1e-8);
  });

  check("projection_idempotent", [&](Json& v) {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    const auto c = ProjectionCandidate::make(m2, HermitianElement::from_dense(m2->ambient(), p));
    const Verdict r = is_abstract_projection(c, 2, 1e-8);
    v["status"] = status_label(r.status, VerdictContext::kProjection);
    return r.member();
  });

  check("wedderburn_random", [&](Json& v) {
    Rng rng(split_seed(seed, 7));
    const BlockSpace space({2, 1, 2});
    std::vector<HermitianElement> basis;
    for (int i = 0; i < 2; ++i) {
      std::vector<Matrix> blocks;
      for (int d : space.block_dims()) blocks.push_back(rng.hermitian(d));
      basis.emplace_back(space, blocks);
    }
    const ConcreteSystem sys(space, basis, 2);
    const BlockDecomposition dec = wedderburn(generate_algebra(sys), 2, seed);
    Json dims = Json::array();
    for (const auto& b : dec.blocks) dims.push_back({b.dim, b.multiplicity});
    v["blocks"] = dims;
    v["round_trip_error_ok"] = dec.round_trip_error <= 1e-7;
    return !dec.exceeds_k && dec.round_trip_error <= 1e-7;
  });

  check("gns_trace_m2", [&](Json& v) {
    const GeneratedAlgebra a = generate_algebra(*m2);
    const GNSRep g = gns(state_from_density(a, linalg::identity(2) / 2.0), a);
    v["dimension"] = g.dimension;
    return g.dimension == 4 && g.multiplicativity_error <= 1e-7 && g.state_error <= 1e-8;
  });

  check("chsh", [&](Json& v) {
    const BellFunctional f = chsh_functional();
    const double local = local_bound(f).value;
    const SeesawResult q = seesaw_optimize(f, 4, {4}, 8, 500, seed, threads);
    v["local_bound"] = local;
    v["seesaw_value"] = q.value;
    return std::abs(local - 2.0) <= 1e-12 && q.value >= 2.0 * std::sqrt(2.0) - 1e-3;
  });

  check("nonsignalling", [&](Json& v) {
    Correlation pr = pr_box();
    const bool pr_ok = check_nonsignalling(pr, 1e-9).nonsignalling;
    pr.at(0, 0, 0, 0) += 0.1;
    pr.at(0, 0, 1, 1) -= 0.1;  // keep the row normalized
    const Marginals bad = check_nonsignalling(pr, 1e-9);
    v["perturbed_signalling"] = bad.max_signalling;
    return pr_ok && !bad.nonsignalling;
  });

  check("cone_chain", [&](Json& v) {
    int violations = 0;
    for (int i = 0; i < 5; ++i) {
      Rng rng(split_seed(seed ^ 0xC0E5ULL, i));
      const Matrix g = rng.gaussian_matrix(4, 4);
      const LevelElement x(m2, 2, linalg::hermitian_part(g * g.adjoint()) / 4.0);
      const Verdict kmax = is_kmax_member(x, 1, 1e-7, search);
      if (kmax.member() && min_eigenvalue(x) < -1e-5) ++violations;
      if (min_eigenvalue(x) >= 0.0 && kmin_best_objective(x, 1, 8, seed) < -1e-5) ++violations;
    }
    v["violations"] = violations;
    return violations == 0;
  });

  out.result["passed"] = passed;
  out.result["total"] = total;
  out.passed = passed == total;
  return out;
}

}  // namespace matorder
