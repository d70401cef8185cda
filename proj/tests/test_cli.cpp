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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "matorder/cli.hpp"
#include "matorder/cones.hpp"
#include "matorder/json_io.hpp"
#include "matorder/random.hpp"
#include "oracles.hpp"

namespace matorder {
namespace {

const std::string kData = MATORDER_DATA_DIR;

struct CliRun {
  int code = 0;
  std::string out, err;
  Json report() const { return Json::parse(out); }
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  CliRun r;
  r.code = run(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "matorder_" + name;
}

TEST(Json, MatrixRoundTrip) {
  Rng rng(61);
  Matrix m = rng.gaussian_matrix(3, 2);
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
  Vector v = rng.unit_vector(4);
  EXPECT_EQ(vector_from_json(vector_to_json(v)), v);
}

TEST(Json, SystemAndElementRoundTrip) {
  Rng rng(62);
  BlockSpace s({2, 1});
  ConcreteSystem v(s, {HermitianElement::from_dense(s, s.mask(rng.hermitian(3)))}, 2);
  ConcreteSystem w = system_from_json(parse_json(to_json(v).dump(), "mem"));
  EXPECT_EQ(w.k(), 2);
  EXPECT_EQ(w.dim(), v.dim());
  EXPECT_TRUE(w.ambient() == s);
  for (int i = 0; i < v.dim(); ++i)
    EXPECT_LT(oracle::frob(w.basis()[i].dense() - v.basis()[i].dense()), 1e-15);
  SystemPtr sp = make_system(ConcreteSystem::full(s, 2));
  LevelElement x(sp, 2, [&] {
    Matrix h = Matrix::Zero(6, 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix b = s.mask(rng.gaussian_matrix(3, 3));
        h.block(3 * i, 3 * j, 3, 3) += b;
        h.block(3 * j, 3 * i, 3, 3) += b.adjoint();
      }
    return h;
  }());
  LevelElement y = level_element_from_json(sp, to_json(x));
  EXPECT_EQ(y.level(), 2);
  EXPECT_EQ(y.flat(), x.flat());
}

TEST(Json, CorrelationStrategyFunctional) {
  Strategy s = chsh_optimal_strategy();
  Strategy t = strategy_from_json(to_json(s));
  Correlation a = correlation_from_strategy(s), b = correlation_from_strategy(t);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(correlation_from_json(to_json(a)).p, a.p);
  BellFunctional f = functional_from_json(Json{{"name", "chsh"}});
  EXPECT_EQ(f.c, chsh_functional().c);
  EXPECT_EQ(functional_from_json(to_json(f)).c, f.c);
}

TEST(Json, VerdictRoundTrip) {
  SystemPtr sp = make_system(ConcreteSystem::full(BlockSpace::single(2), 2));
  LevelElement f(sp, 2, oracle::swap(2));
  Verdict v = is_kmin_member(f, 2, 1e-8);
  Verdict w = verdict_from_json(to_json(v, VerdictContext::kCone));
  EXPECT_EQ(w.status, v.status);
  const auto& a = std::get<KMinWitness>(v.certificate);
  const auto& b = std::get<KMinWitness>(w.certificate);
  EXPECT_EQ(a.vector, b.vector);
  EXPECT_TRUE(check_kmin_witness(b, f, 2, 1e-8));
}

TEST(Json, MalformedReportsPosition) {
  try {
    parse_json("{\n  \"a\": [1,\n", "inline");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("inline:3:"), std::string::npos) << e.what();
  }
}

TEST(Cli, CertifyKminSwap) {
  CliRun r = cli({"certify", "kmin", "--system", kData + "/swap_system.json", "--element",
               kData + "/swap_element.json", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.report();
  EXPECT_EQ(j["toolkit"], "matorder");
  EXPECT_EQ(j["command"], "certify kmin");
  EXPECT_EQ(j["result"]["status"], "NOT_MEMBER");
  EXPECT_NEAR(j["result"]["certificate"]["value"].get<double>(), -1.0, 1e-6);
  for (const char* key : {"version", "argv", "config", "timings"}) EXPECT_TRUE(j.contains(key));
}

TEST(Cli, CertifyKminUndecided) {
  CliRun r = cli({"certify", "kmin", "--system", kData + "/swap_system.json", "--element",
               kData + "/swap_element.json", "--k", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["result"]["status"], "UNDECIDED");
  EXPECT_GE(r.report()["result"]["objective"].get<double>(), -1e-6);
}

TEST(Cli, CertifyKmaxAndProjection) {
  CliRun r = cli({"certify", "kmax", "--system", kData + "/swap_system.json", "--element",
               kData + "/swap_element.json", "--k", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["status"], "NOT_MEMBER");
  CliRun p = cli({"certify", "projection", "--system", kData + "/m2_system.json", "--p",
               kData + "/half_unit.json", "--k", "2"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.report()["result"]["status"], "NOT_PROJECTION");
  CliRun q = cli({"certify", "projection", "--system", kData + "/m2_system.json", "--p",
               kData + "/diag_projection.json", "--k", "2"});
  EXPECT_EQ(q.report()["result"]["status"], "MEMBER");
  CliRun bad = cli({"certify", "projection", "--system", kData + "/m2_system.json", "--p",
                 kData + "/half_unit.json", "--k", "2", "--eps-schedule", "1e-3,1e-2"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, MalformedJson) {
  const std::string path = temp_path("bad.json");
  std::ofstream(path) << "{\"blocks\": [2],\n \"k\": }\n";
  CliRun r = cli({"certify", "kmin", "--system", path, "--element", kData + "/swap_element.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
  CliRun missing = cli({"certify", "kmin", "--system", temp_path("nope.json"), "--element", path});
  EXPECT_EQ(missing.code, 1);
  std::remove(path.c_str());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"certify"}).code, 1);
  EXPECT_EQ(cli({"certify", "kmin", "--system"}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
}

TEST(Cli, AlgebraCommands) {
  CliRun g = cli({"algebra", "generate", "--system", kData + "/pauli_xz_system.json"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(g.report()["result"]["dim"], 4);
  CliRun d = cli({"algebra", "decompose", "--system", kData + "/pauli_xz_system.json", "--k", "2"});
  ASSERT_EQ(d.code, 0) << d.err;
  CliRun s = cli({"algebra", "gns", "--system", kData + "/m2_system.json", "--state",
               kData + "/trace_state_m2.json"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.report()["result"]["gns"]["dimension"], 4);
}

TEST(Cli, CorrelationCommands) {
  CliRun ok = cli({"corr", "check-ns", "--table", kData + "/pr_box.json"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.report()["result"]["nonsignalling"], true);
  CliRun bad = cli({"corr", "check-ns", "--table", kData + "/pr_box_perturbed.json"});
  EXPECT_EQ(bad.report()["result"]["nonsignalling"], false);
  CliRun fs = cli({"corr", "from-strategy", "--strategy", kData + "/chsh_strategy.json"});
  ASSERT_EQ(fs.code, 0) << fs.err;
  CliRun mix = cli({"corr", "mix", "--table", kData + "/pr_box.json", "--table",
                 kData + "/pr_box.json", "--weights", "0.5,0.5"});
  EXPECT_EQ(mix.code, 0) << mix.err;
  CliRun w = cli({"corr", "mix", "--table", kData + "/pr_box.json", "--weights", "0.3"});
  EXPECT_EQ(w.code, 1);
  CliRun re = cli({"corr", "realize", "--strategy", kData + "/chsh_strategy.json"});
  EXPECT_EQ(re.code, 0) << re.err;
}

TEST(Cli, BellOptimize) {
  CliRun r = cli({"bell", "optimize", "--functional", kData + "/chsh.json", "--k", "4", "--dims", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.report()["result"]["value"].get<double>(), 2.8274);
  EXPECT_EQ(r.report()["result"]["local_bound"]["value"], 2.0);
}

TEST(Cli, SelftestDeterministic) {
  const std::string path = temp_path("self.json");
  CliRun a = cli({"selftest", "--seed", "11", "--out", path});
  ASSERT_EQ(a.code, 0) << a.err;
  Json ja = read_json_file(path);
  CliRun b = cli({"selftest", "--seed", "11", "--out", path, "--threads", "2"});
  ASSERT_EQ(b.code, 0);
  Json jb = read_json_file(path);
  ja.erase("timings");
  jb.erase("timings");
  jb["argv"] = ja["argv"];  // only the thread flag differs
  EXPECT_EQ(ja.dump(), jb.dump());
  std::remove(path.c_str());
}

TEST(Cli, ToleranceOverridesAreScoped) {
  const Tolerances before = tolerances();
  CliRun r = cli({"certify", "kmin", "--system", kData + "/swap_system.json", "--element",
               kData + "/swap_element.json", "--k", "2", "--eig-tol", "1e-6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["config"]["tolerances"]["eig_tol"], 1e-6);
  EXPECT_EQ(tolerances().eig_tol, before.eig_tol);
}

}  // namespace
}  // namespace matorder
